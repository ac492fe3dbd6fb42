#pragma once

#include <string>

#include "json.hpp"

#include "abelic/bounds.hpp"
#include "abelic/isogeny.hpp"
#include "abelic/ledger.hpp"
#include "abelic/matrix.hpp"
#include "abelic/order.hpp"
#include "abelic/polarization.hpp"
#include "abelic/splitting.hpp"

namespace abelic {

/*
 * Strict JSON documents for the command-line surface.  Insertion order is
 * preserved so emitted documents are byte-stable; every parser enumerates
 * its allowed keys and rejects anything else; arbitrary-precision values
 * travel as decimal / fraction strings (plain JSON integers are accepted on
 * input, floats never are).  Top-level documents carry the versioned
 * "schema": "abelic/1" marker; it is optional on input but must match.
 */

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaTag = "abelic/1";

// Parse with MalformedInput instead of a library exception.
Json parse_json_text(const std::string& text);

// Key discipline: every key of j must appear in `known`, every key of
// `required` must be present.  `what` names the document in errors.
void check_keys(const Json& j, const std::string& what,
                const std::vector<std::string>& required,
                const std::vector<std::string>& optional = {});

// Scalar bridges.  Integers accept JSON integer numbers or decimal strings;
// rationals additionally accept "p/q" strings.  Emission: integers become
// JSON numbers when they fit, decimal strings otherwise; rationals are
// always strings.
Int int_from_json(const Json& j, const std::string& what);
Rat rat_from_json(const Json& j, const std::string& what);
long long_from_json(const Json& j, const std::string& what);
int int32_from_json(const Json& j, const std::string& what);
bool bool_from_json(const Json& j, const std::string& what);
Json int_to_json(const Int& z);
Json rat_to_json(const Rat& q);

Json order_to_json(const Order& o);
Order order_from_json(const Json& j);

// Matrix entries as a rows x cols array of arrays.  One entry is an
// integer, a decimal string, or an [a, b] coefficient pair on the (1,
// omega) basis; emission uses strings over the integers and pairs of
// strings otherwise.
Json matrix_entries_to_json(const MorphismMatrix& m);
MorphismMatrix matrix_entries_from_json(const Order& o, const Json& j,
                                        const std::string& what);

// Hermitian class entries: a size x size array of [a, b] pairs of rational
// strings (scalar entries accepted on input as rationals with b = 0).
Json class_entries_to_json(const HermitianClass& h);
HermitianClass class_entries_from_json(const Order& o, const Json& j,
                                       const std::string& what);

// {"order":…, "ambient":…, "rank":…, "generators":…, "saturated":…}
Json module_to_json(const SubvarietyModule& b);
SubvarietyModule module_from_json(const Json& j);

// The split document bundles the module fields with phi, phi_hat, alpha,
// degree, t and the normalization record; summary keys written by the
// split subcommand (style, connecting_degree, diagram) are tolerated and
// revalidated so outputs round-trip as inputs.
Json split_to_json(const SubvarietySplit& s);
SubvarietySplit split_from_json(const Json& j);

Json bound_to_json(const BoundResult& r);
Json trace_to_json(const LedgerTrace& t);

}  // namespace abelic
