#include "abelic/json_io.hpp"

#include <algorithm>

#include "abelic/errors.hpp"

namespace abelic {

Json parse_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::MalformedInput, "invalid JSON");
  return j;
}

void check_keys(const Json& j, const std::string& what,
                const std::vector<std::string>& required,
                const std::vector<std::string>& optional) {
  if (!j.is_object())
    fail(ErrorCode::MalformedInput, what + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (std::find(required.begin(), required.end(), k) == required.end() &&
        std::find(optional.begin(), optional.end(), k) == optional.end())
      fail(ErrorCode::MalformedInput, what + ": unknown field \"" + k + "\"");
  }
  for (const auto& k : required)
    if (!j.contains(k))
      fail(ErrorCode::MalformedInput, what + ": missing field \"" + k + "\"");
  if (j.contains("schema") && j.at("schema") != Json(kSchemaTag))
    fail(ErrorCode::MalformedInput, what + ": unsupported schema version");
}

Int int_from_json(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_number_unsigned()) return Int(j.get<unsigned long>());
  if (j.is_string()) return parse_int(j.get<std::string>());
  fail(ErrorCode::MalformedInput,
       what + ": expected an integer or a decimal string");
}

Rat rat_from_json(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Rat(Int(j.get<long>()));
  if (j.is_number_unsigned()) return Rat(Int(j.get<unsigned long>()));
  if (j.is_string()) return parse_rat(j.get<std::string>());
  fail(ErrorCode::MalformedInput,
       what + ": expected a rational \"p/q\" string or an integer");
}

long long_from_json(const Json& j, const std::string& what) {
  Int z = int_from_json(j, what);
  if (!z.fits_slong_p()) fail(ErrorCode::CapExceeded, what + ": out of range");
  return z.get_si();
}

int int32_from_json(const Json& j, const std::string& what) {
  long v = long_from_json(j, what);
  if (v < -(1L << 30) || v > (1L << 30))
    fail(ErrorCode::CapExceeded, what + ": out of range");
  return static_cast<int>(v);
}

bool bool_from_json(const Json& j, const std::string& what) {
  if (!j.is_boolean())
    fail(ErrorCode::MalformedInput, what + ": expected a boolean");
  return j.get<bool>();
}

Json int_to_json(const Int& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(to_string(z));
}

Json rat_to_json(const Rat& q) { return Json(to_string(q)); }

Json order_to_json(const Order& o) {
  Json j = Json::object();
  if (!o.imaginary()) {
    j["kind"] = "Z";
  } else {
    j["kind"] = "iq";
    j["d"] = o.d;
    j["f"] = o.f;
  }
  return j;
}

Order order_from_json(const Json& j) {
  if (!j.is_object())
    fail(ErrorCode::MalformedInput, "order: expected an object");
  if (!j.contains("kind"))
    fail(ErrorCode::MalformedInput, "order: missing field \"kind\"");
  const Json& kind = j.at("kind");
  if (kind == Json("Z")) {
    check_keys(j, "order", {"kind"});
    return order_integers();
  }
  if (kind == Json("iq")) {
    check_keys(j, "order", {"kind", "d"}, {"f"});
    long d = long_from_json(j.at("d"), "order.d");
    long f = j.contains("f") ? long_from_json(j.at("f"), "order.f") : 1;
    return order_iq(d, f);
  }
  fail(ErrorCode::MalformedInput, "order.kind: expected \"Z\" or \"iq\"");
}

static OrderElement entry_from_json(const Order& o, const Json& j,
                                    const std::string& what) {
  if (j.is_array()) {
    if (j.size() != 2)
      fail(ErrorCode::MalformedInput, what + ": expected an [a, b] pair");
    Int a = int_from_json(j.at(0), what);
    Int b = int_from_json(j.at(1), what);
    if (!o.imaginary() && b != 0)
      fail(ErrorCode::MalformedInput, what + ": nonzero omega part over Z");
    return OrderElement(o, a, b);
  }
  return OrderElement(o, int_from_json(j, what));
}

Json matrix_entries_to_json(const MorphismMatrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows; ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols; ++c) {
      const OrderElement& x = m.at(r, c);
      if (m.order.imaginary())
        row.push_back(Json::array({to_string(x.a), to_string(x.b)}));
      else
        row.push_back(to_string(x.a));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

MorphismMatrix matrix_entries_from_json(const Order& o, const Json& j,
                                        const std::string& what) {
  if (!j.is_array() || j.empty())
    fail(ErrorCode::MalformedInput, what + ": expected a nonempty array of rows");
  int rows = static_cast<int>(j.size());
  if (!j.at(0).is_array() || j.at(0).empty())
    fail(ErrorCode::MalformedInput, what + ": rows must be nonempty arrays");
  int cols = static_cast<int>(j.at(0).size());
  MorphismMatrix m(o, rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = j.at(r);
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      fail(ErrorCode::MalformedInput, what + ": ragged rows");
    for (int c = 0; c < cols; ++c) m.at(r, c) = entry_from_json(o, row.at(c), what);
  }
  return m;
}

Json class_entries_to_json(const HermitianClass& h) {
  Json rows = Json::array();
  for (int r = 0; r < h.size; ++r) {
    Json row = Json::array();
    for (int c = 0; c < h.size; ++c) {
      const KElem& x = h.at(r, c);
      row.push_back(Json::array({to_string(x.a), to_string(x.b)}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

HermitianClass class_entries_from_json(const Order& o, const Json& j,
                                       const std::string& what) {
  if (!j.is_array() || j.empty())
    fail(ErrorCode::MalformedInput, what + ": expected a nonempty array of rows");
  int n = static_cast<int>(j.size());
  HermitianClass h(o, n);
  for (int r = 0; r < n; ++r) {
    const Json& row = j.at(r);
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      fail(ErrorCode::MalformedInput, what + ": expected a square array");
    for (int c = 0; c < n; ++c) {
      const Json& cell = row.at(c);
      KElem x;
      if (cell.is_array()) {
        if (cell.size() != 2)
          fail(ErrorCode::MalformedInput, what + ": expected an [a, b] pair");
        x.a = rat_from_json(cell.at(0), what);
        x.b = rat_from_json(cell.at(1), what);
      } else {
        x.a = rat_from_json(cell, what);
      }
      if (!o.imaginary() && !(x.b == 0))
        fail(ErrorCode::MalformedInput, what + ": nonzero omega part over Z");
      h.at(r, c) = x;
    }
  }
  if (!conjugate_symmetric(h))
    fail(ErrorCode::MalformedInput, what + ": not conjugate-symmetric");
  return h;
}

Json module_to_json(const SubvarietyModule& b) {
  Json j = Json::object();
  j["schema"] = kSchemaTag;
  j["order"] = order_to_json(b.order);
  j["ambient"] = b.ambient;
  j["rank"] = b.rank;
  j["generators"] = matrix_entries_to_json(b.generators);
  j["saturated"] = b.saturated;
  return j;
}

SubvarietyModule module_from_json(const Json& j) {
  check_keys(j, "module", {"order", "ambient", "rank", "generators"},
             {"schema", "saturated", "subcommand"});
  Order o = order_from_json(j.at("order"));
  int ambient = int32_from_json(j.at("ambient"), "module.ambient");
  int rank = int32_from_json(j.at("rank"), "module.rank");
  MorphismMatrix g =
      matrix_entries_from_json(o, j.at("generators"), "module.generators");
  bool saturated = j.contains("saturated") &&
                   bool_from_json(j.at("saturated"), "module.saturated");
  return make_module(o, ambient, rank, std::move(g), saturated);
}

Json split_to_json(const SubvarietySplit& s) {
  Json j = Json::object();
  j["schema"] = kSchemaTag;
  j["order"] = order_to_json(s.b.order);
  j["ambient"] = s.b.ambient;
  j["rank"] = s.b.rank;
  j["generators"] = matrix_entries_to_json(s.b.generators);
  j["saturated"] = s.b.saturated;
  j["phi"] = matrix_entries_to_json(s.phi);
  j["phi_hat"] = matrix_entries_to_json(s.phi_hat);
  j["alpha"] = int_to_json(s.alpha);
  j["degree"] = int_to_json(s.degree);
  j["t"] = matrix_entries_to_json(s.t);
  j["normalized"] = s.normalized;
  j["t_norm_sq"] = int_to_json(s.t_norm_sq);
  return j;
}

SubvarietySplit split_from_json(const Json& j) {
  check_keys(j,
             "split", {"order", "ambient", "rank", "generators", "phi",
                       "phi_hat", "alpha", "degree", "t"},
             {"schema", "saturated", "normalized", "t_norm_sq", "style",
              "connecting_degree", "diagram", "subcommand"});
  SubvarietySplit s;
  Order o = order_from_json(j.at("order"));
  int ambient = int32_from_json(j.at("ambient"), "split.ambient");
  int rank = int32_from_json(j.at("rank"), "split.rank");
  MorphismMatrix g =
      matrix_entries_from_json(o, j.at("generators"), "split.generators");
  bool saturated = !j.contains("saturated") ||
                   bool_from_json(j.at("saturated"), "split.saturated");
  s.b = make_module(o, ambient, rank, std::move(g), saturated);
  s.phi = matrix_entries_from_json(o, j.at("phi"), "split.phi");
  s.phi_hat = matrix_entries_from_json(o, j.at("phi_hat"), "split.phi_hat");
  s.alpha = int_from_json(j.at("alpha"), "split.alpha");
  s.degree = int_from_json(j.at("degree"), "split.degree");
  s.t = matrix_entries_from_json(o, j.at("t"), "split.t");
  s.normalized = j.contains("normalized") &&
                 bool_from_json(j.at("normalized"), "split.normalized");
  s.t_norm_sq = j.contains("t_norm_sq")
                    ? int_from_json(j.at("t_norm_sq"), "split.t_norm_sq")
                    : Int(1);
  if (s.phi.rows != ambient || s.phi.cols != ambient ||
      s.phi_hat.rows != ambient || s.phi_hat.cols != ambient ||
      s.t.rows != ambient || s.t.cols != ambient)
    fail(ErrorCode::MalformedInput, "split: matrix shapes disagree with ambient");
  if (s.alpha <= 0 || s.degree <= 0)
    fail(ErrorCode::MalformedInput, "split: alpha and degree must be positive");
  if (j.contains("style") && j.at("style") != Json("completion") &&
      j.at("style") != Json("hermitian"))
    fail(ErrorCode::MalformedInput, "split.style: unknown construction");
  if (j.contains("connecting_degree"))
    int_from_json(j.at("connecting_degree"), "split.connecting_degree");
  if (j.contains("diagram") && !j.at("diagram").is_object())
    fail(ErrorCode::MalformedInput, "split.diagram: expected an object");
  return s;
}

Json bound_to_json(const BoundResult& r) {
  Json j = Json::object();
  j["lower"] = rat_to_json(r.lower);
  j["upper"] = rat_to_json(r.upper);
  j["exact"] = r.exact;
  if (r.numerator_exponent_nonpositive)
    j["numerator_exponent_nonpositive"] = true;
  return j;
}

static Json affine_to_json(const EtaAffine& e) {
  Json j = Json::object();
  j["k0"] = rat_to_json(e.k0);
  j["k1"] = rat_to_json(e.k1);
  return j;
}

Json trace_to_json(const LedgerTrace& t) {
  Json j = Json::object();
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    Json step = Json::object();
    step["lhs"] = s.lhs;
    step["rhs"] = s.rhs;
    step["rule"] = s.rule;
    step["identity"] = s.identity;
    step["proven"] = s.proven;
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  Json symbols = Json::object();
  for (const auto& [k, v] : t.symbols) symbols[k] = v;
  j["symbols"] = std::move(symbols);
  j["numerator_form"] = affine_to_json(t.numerator_form);
  j["denominator_form"] = affine_to_json(t.denominator_form);
  j["numerator_exponent"] = rat_to_json(t.numerator_exponent);
  j["denominator_exponent"] = rat_to_json(t.denominator_exponent);
  j["rescaled_eta"] = rat_to_json(t.rescaled_eta);
  j["global_alpha"] = int_to_json(t.global_alpha);
  j["absorption"] = bound_to_json(t.absorption);
  j["constant_factors"] = t.constant_factors;
  j["all_proven"] = t.all_proven();
  return j;
}

}  // namespace abelic
