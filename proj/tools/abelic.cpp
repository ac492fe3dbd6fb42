// Command-line entry point: every library operation behind one subcommand,
// JSON in, JSON out.  Exit 0 on success, 1 on a domain error (error
// document on stderr), 2 on malformed input.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "abelic/errors.hpp"
#include "abelic/json_io.hpp"
#include "abelic/oracle.hpp"

namespace abelic {
namespace {

struct CliOptions {
  std::string input;   // empty: stdin
  std::string output;  // empty: stdout
  long precision = 128;
  std::optional<std::uint64_t> seed;
  std::optional<long> cap;
};

std::string read_input(const CliOptions& opt) {
  if (opt.input.empty()) {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream f(opt.input, std::ios::binary);
  if (!f) fail(ErrorCode::MalformedInput, "cannot open input: " + opt.input);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

void write_output(const CliOptions& opt, const Json& doc) {
  std::string text = doc.dump(2) + "\n";
  if (opt.output.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::string tmp = opt.output + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) fail(ErrorCode::MalformedInput, "cannot open output: " + opt.output);
    f << text;
  }
  if (std::rename(tmp.c_str(), opt.output.c_str()) != 0)
    fail(ErrorCode::MalformedInput, "cannot write output: " + opt.output);
}

long doc_precision(const Json& in, const CliOptions& opt) {
  if (in.contains("precision"))
    return long_from_json(in.at("precision"), "precision");
  return opt.precision;
}

// Common optional keys every input envelope tolerates.
const std::vector<std::string> kEnvelope = {"schema", "subcommand"};

std::vector<std::string> with_envelope(std::vector<std::string> extra) {
  extra.insert(extra.end(), kEnvelope.begin(), kEnvelope.end());
  return extra;
}

void check_subcommand_tag(const Json& in, const std::string& name) {
  if (in.contains("subcommand") && in.at("subcommand") != Json(name))
    fail(ErrorCode::MalformedInput,
         "input tagged for a different subcommand than \"" + name + "\"");
}

Json run_order(const Json& in) {
  check_keys(in, "order input", {"order"}, kEnvelope);
  Order o = order_from_json(in.at("order"));
  Json out = order_to_json(o);
  if (o.imaginary()) {
    out["omega_trace"] = int_to_json(o.omega_trace());
    out["omega_norm"] = int_to_json(o.omega_norm());
  }
  out["euclidean"] = o.euclidean();
  out["units"] = static_cast<long>(units(o).size());
  return out;
}

Json run_deg(const Json& in) {
  check_keys(in, "deg input", {"order", "matrix"}, kEnvelope);
  Order o = order_from_json(in.at("order"));
  MorphismMatrix m = matrix_entries_from_json(o, in.at("matrix"), "matrix");
  Json out = Json::object();
  out["degree"] = int_to_json(degree(m));
  return out;
}

Json run_dual(const Json& in) {
  check_keys(in, "dual input", {"order", "matrix"}, kEnvelope);
  Order o = order_from_json(in.at("order"));
  MorphismMatrix m = matrix_entries_from_json(o, in.at("matrix"), "matrix");
  IsogenyData d = dual_and_alpha(m);
  Json out = Json::object();
  out["order"] = order_to_json(o);
  out["degree"] = int_to_json(d.degree);
  out["alpha"] = int_to_json(d.alpha);
  out["dual"] = matrix_entries_to_json(d.dual);
  Json divisors = Json::array();
  for (const Int& z : d.kernel_divisors) divisors.push_back(int_to_json(z));
  out["kernel_divisors"] = std::move(divisors);
  return out;
}

Json run_kernel(const Json& in) {
  check_keys(in, "kernel input", {"order", "matrix"}, kEnvelope);
  Order o = order_from_json(in.at("order"));
  MorphismMatrix m = matrix_entries_from_json(o, in.at("matrix"), "matrix");
  IsogenyData d = dual_and_alpha(m);
  Json out = Json::object();
  out["alpha"] = int_to_json(d.alpha);
  out["degree"] = int_to_json(d.degree);
  Json divisors = Json::array();
  for (const Int& z : d.kernel_divisors) divisors.push_back(int_to_json(z));
  out["divisors"] = std::move(divisors);
  return out;
}

Json diagram_to_json(const DiagramVerdict& v) {
  Json j = Json::object();
  j["dual_left"] = v.dual_left;
  j["dual_right"] = v.dual_right;
  j["outer"] = v.outer;
  j["family_ok"] = v.family_ok;
  j["squares"] = v.squares;
  j["all"] = v.all_true();
  return j;
}

Json run_split(const Json& in) {
  check_keys(in, "split input", {"order", "ambient", "rank", "generators"},
             with_envelope({"saturated", "style", "normalize", "budget"}));
  Order o = order_from_json(in.at("order"));
  int ambient = int32_from_json(in.at("ambient"), "ambient");
  int rank = int32_from_json(in.at("rank"), "rank");
  MorphismMatrix g = matrix_entries_from_json(o, in.at("generators"), "generators");
  bool saturated = in.contains("saturated") &&
                   bool_from_json(in.at("saturated"), "saturated");
  SubvarietyModule b = make_module(o, ambient, rank, std::move(g), saturated);

  std::string style_name = "completion";
  if (in.contains("style")) {
    if (!in.at("style").is_string())
      fail(ErrorCode::MalformedInput, "style: expected a string");
    style_name = in.at("style").get<std::string>();
  }
  ComplementStyle style;
  if (style_name == "completion") style = ComplementStyle::completion;
  else if (style_name == "hermitian") style = ComplementStyle::hermitian;
  else fail(ErrorCode::MalformedInput, "style: unknown construction");

  bool normalize = !in.contains("normalize") ||
                   bool_from_json(in.at("normalize"), "normalize");
  int budget = in.contains("budget") ? int32_from_json(in.at("budget"), "budget") : 3;

  SaturationResult sat = saturate(b);
  SubvarietySplit s = complement_and_split(sat.module, style);
  if (normalize) {
    s = normalize_t(std::move(s), budget);
    s = phi_family(std::move(s));
  }
  Json out = split_to_json(s);
  out["style"] = style_name;
  out["connecting_degree"] = int_to_json(sat.connecting_degree);
  out["diagram"] = diagram_to_json(diagram_check(s));
  return out;
}

Json run_verify_equivalence(const Json& in) {
  SubvarietySplit s = split_from_json(in);
  EquivalenceVerdict v = verify_equivalence(s);
  Json out = Json::object();
  out["formal_collapse"] = v.formal_collapse;
  out["global"] = v.global;
  out["restricted"] = v.restricted;
  out["all"] = v.all_true();
  out["lhs"] = class_entries_to_json(v.lhs);
  out["rhs"] = class_entries_to_json(v.rhs);
  return out;
}

Json run_verify_gael(const Json& in) {
  check_keys(in, "verify-gael input", {"n", "rows", "reference"},
             with_envelope({"order"}));
  Order o = in.contains("order") ? order_from_json(in.at("order"))
                                 : order_integers();
  int n = int32_from_json(in.at("n"), "n");
  MorphismMatrix rows = matrix_entries_from_json(o, in.at("rows"), "rows");
  if (!in.at("reference").is_array())
    fail(ErrorCode::MalformedInput, "reference: expected an array of classes");
  std::vector<HermitianClass> reference;
  for (const Json& c : in.at("reference"))
    reference.push_back(class_entries_from_json(o, c, "reference"));
  IntersectionSplitVerdict v = verify_intersection_split(rows, n, reference);
  Json out = Json::object();
  out["lhs"] = rat_to_json(v.lhs);
  out["rhs"] = rat_to_json(v.rhs);
  out["equal"] = v.equal;
  return out;
}

Json run_bound(const Json& in, const CliOptions& opt) {
  if (!in.contains("type") || !in.at("type").is_string())
    fail(ErrorCode::MalformedInput, "bound input: missing \"type\"");
  std::string type = in.at("type").get<std::string>();
  long prec = doc_precision(in, opt);
  auto rat_field = [&](const char* key, const Rat& dflt) {
    return in.contains(key) ? rat_from_json(in.at(key), key) : dflt;
  };
  if (type == "main") {
    check_keys(in, "bound input", {"type", "degH", "degY", "codim", "eta"},
               with_envelope({"c", "precision"}));
    BoundQuery q;
    q.constant_c = rat_field("c", Rat(1));
    q.deg_h = rat_from_json(in.at("degH"), "degH");
    q.deg_y = rat_from_json(in.at("degY"), "degY");
    q.codim = int32_from_json(in.at("codim"), "codim");
    q.eta = rat_from_json(in.at("eta"), "eta");
    return bound_to_json(main_bound(q, prec));
  }
  if (type == "effective") {
    check_keys(in, "bound input", {"type", "degY", "codim", "eta"},
               with_envelope({"c", "precision"}));
    return bound_to_json(effective_bogomolov(
        rat_field("c", Rat(1)), rat_from_json(in.at("degY"), "degY"),
        int32_from_json(in.at("codim"), "codim"),
        rat_from_json(in.at("eta"), "eta"), prec));
  }
  if (type == "galateau") {
    check_keys(in, "bound input", {"type", "degY", "dimB", "codim"},
               with_envelope({"c0", "omega", "precision"}));
    Int lambda = galateau_lambda(int32_from_json(in.at("dimB"), "dimB"),
                                 int32_from_json(in.at("codim"), "codim"));
    return bound_to_json(galateau_bound(
        rat_field("c0", Rat(1)), rat_field("omega", Rat(1)),
        rat_from_json(in.at("degY"), "degY"), lambda, prec));
  }
  if (type == "isogeny") {
    check_keys(in, "bound input",
               {"type", "degPullB", "degPullY", "codim", "eta"},
               with_envelope({"c", "precision"}));
    return bound_to_json(isogeny_bound(
        rat_from_json(in.at("degPullB"), "degPullB"),
        rat_from_json(in.at("degPullY"), "degPullY"),
        int32_from_json(in.at("codim"), "codim"),
        rat_from_json(in.at("eta"), "eta"), rat_field("c", Rat(1)), prec));
  }
  if (type == "theta") {
    check_keys(in, "bound input", {"type", "degB", "degY", "codim", "eta"},
               with_envelope({"c1", "precision"}));
    TranslatedBound t = translate_theta(
        rat_field("c1", Rat(1)), rat_from_json(in.at("degB"), "degB"),
        rat_from_json(in.at("degY"), "degY"),
        int32_from_json(in.at("codim"), "codim"),
        rat_from_json(in.at("eta"), "eta"), prec);
    Json out = bound_to_json(t.theta);
    out["quarter"] = bound_to_json(t.quarter);
    out["height_rule"] = t.height_rule;
    return out;
  }
  fail(ErrorCode::MalformedInput, "bound.type: unknown \"" + type + "\"");
}

Json run_ledger(const Json& in, const CliOptions& opt) {
  if (!in.contains("theorem") || !in.at("theorem").is_string())
    fail(ErrorCode::MalformedInput, "ledger input: missing \"theorem\"");
  std::string which = in.at("theorem").get<std::string>();
  LedgerTrace trace;
  if (which == "2.8") {
    check_keys(in, "ledger input", {"theorem", "g", "d", "eta"}, kEnvelope);
    trace = isogeny_minimum_ledger(int32_from_json(in.at("g"), "g"),
                                   int32_from_json(in.at("d"), "d"),
                                   rat_from_json(in.at("eta"), "eta"));
  } else if (which == "4.1") {
    check_keys(in, "ledger input",
               {"theorem", "codim", "eta", "factors", "degH", "degY"},
               with_envelope({"precision"}));
    if (!in.at("factors").is_array())
      fail(ErrorCode::MalformedInput, "factors: expected an array");
    std::vector<LedgerFactor> factors;
    for (const Json& f : in.at("factors")) {
      check_keys(f, "factor", {"alpha", "binom"}, {"n"});
      LedgerFactor lf;
      lf.alpha = int_from_json(f.at("alpha"), "factor.alpha");
      lf.binom = int_from_json(f.at("binom"), "factor.binom");
      lf.n = f.contains("n") ? int32_from_json(f.at("n"), "factor.n") : 1;
      factors.push_back(std::move(lf));
    }
    trace = composite_bound_ledger(
        int32_from_json(in.at("codim"), "codim"),
        rat_from_json(in.at("eta"), "eta"), factors,
        rat_from_json(in.at("degH"), "degH"),
        rat_from_json(in.at("degY"), "degY"), doc_precision(in, opt));
  } else {
    fail(ErrorCode::MalformedInput, "ledger.theorem: unknown \"" + which + "\"");
  }
  Json out = Json::object();
  out["theorem"] = which;
  Json body = trace_to_json(trace);
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  return out;
}

Json run_oracle(const Json& in, const CliOptions& opt) {
  check_keys(in, "oracle input", {"suite"},
             with_envelope({"seed", "orders", "matrices", "max_n", "norm_bound",
                            "kernel_cap", "phi_cap"}));
  if (!in.at("suite").is_string())
    fail(ErrorCode::MalformedInput, "suite: expected a string");
  std::string suite = in.at("suite").get<std::string>();

  CrossCheckScope scope;
  if (in.contains("seed"))
    scope.seed = static_cast<std::uint64_t>(
        long_from_json(in.at("seed"), "seed"));
  else if (opt.seed)
    scope.seed = *opt.seed;
  else
    fail(ErrorCode::MalformedInput,
         "oracle: an explicit seed is required for reproducibility");

  if (in.contains("orders")) {
    if (!in.at("orders").is_array())
      fail(ErrorCode::MalformedInput, "orders: expected an array");
    for (const Json& o : in.at("orders"))
      scope.orders.push_back(order_from_json(o));
  } else {
    scope.orders = {order_integers(), order_iq(1), order_iq(3)};
  }
  if (in.contains("matrices"))
    scope.matrices = int32_from_json(in.at("matrices"), "matrices");
  if (in.contains("max_n")) scope.max_n = int32_from_json(in.at("max_n"), "max_n");
  if (in.contains("norm_bound"))
    scope.entry_norm_bound = long_from_json(in.at("norm_bound"), "norm_bound");
  if (in.contains("kernel_cap"))
    scope.kernel_cap = int_from_json(in.at("kernel_cap"), "kernel_cap");
  else if (opt.cap)
    scope.kernel_cap = Int(*opt.cap);
  if (in.contains("phi_cap"))
    scope.stab.phi_cap = int32_from_json(in.at("phi_cap"), "phi_cap");

  scope.run_degrees = suite == "degrees" || suite == "all";
  scope.run_kernels = suite == "kernels" || suite == "all";
  scope.run_stab = suite == "stab" || suite == "all";
  if (!scope.run_degrees && !scope.run_kernels && !scope.run_stab)
    fail(ErrorCode::MalformedInput, "suite: unknown \"" + suite + "\"");

  CrossCheckReport rep = cross_check(scope);
  Json out = Json::object();
  out["suite"] = suite;
  out["seed"] = scope.seed;
  out["degree_checks"] = rep.degree_checks;
  out["kernel_checks"] = rep.kernel_checks;
  out["stab_checks"] = rep.stab_checks;
  Json failures = Json::array();
  for (const auto& f : rep.failures) {
    Json w = Json::object();
    w["suite"] = f.suite;
    w["witness"] = f.witness;
    failures.push_back(std::move(w));
  }
  out["failures"] = std::move(failures);
  out["ok"] = rep.ok();
  return out;
}

int dispatch(const std::string& name, const CliOptions& opt) {
  Json in = parse_json_text(read_input(opt));
  check_subcommand_tag(in, name);
  Json out;
  if (name == "order") out = run_order(in);
  else if (name == "deg") out = run_deg(in);
  else if (name == "dual") out = run_dual(in);
  else if (name == "kernel") out = run_kernel(in);
  else if (name == "split") out = run_split(in);
  else if (name == "verify-equivalence") out = run_verify_equivalence(in);
  else if (name == "verify-gael") out = run_verify_gael(in);
  else if (name == "bound") out = run_bound(in, opt);
  else if (name == "ledger") out = run_ledger(in, opt);
  else out = run_oracle(in, opt);
  write_output(opt, out);
  return 0;
}

}  // namespace
}  // namespace abelic

int main(int argc, char** argv) {
  using namespace abelic;

  CLI::App app{"exact isogeny-degree and lower-bound calculus"};
  app.require_subcommand(1);

  CliOptions opt;
  app.add_option("--input", opt.input, "input JSON file (default: stdin)")
      ->check(CLI::ExistingFile);
  app.add_option("--output", opt.output, "output JSON file (default: stdout)");
  app.add_option("--precision", opt.precision,
                 "working precision in bits (default 128)");
  std::uint64_t seed_flag = 0;
  auto* seed_opt = app.add_option("--seed", seed_flag, "random seed");
  long cap_flag = 0;
  auto* cap_opt = app.add_option("--cap", cap_flag, "enumeration cap");

  const char* names[] = {"order", "deg", "dual", "kernel", "split",
                         "verify-equivalence", "verify-gael", "bound",
                         "ledger", "oracle"};
  const char* briefs[] = {
      "describe an endomorphism order",
      "degree of a matrix isogeny",
      "dual isogeny and minimal multiplier",
      "kernel invariants of a matrix isogeny",
      "split a power of a curve along a submodule",
      "check the pullback-class identities of a split",
      "check the top self-intersection splitting identity",
      "evaluate a lower-bound formula as a rational enclosure",
      "emit a machine-checked proof-chain ledger",
      "run the brute-force cross-check suites"};
  for (size_t i = 0; i < std::size(names); ++i)
    app.add_subcommand(names[i], briefs[i])->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (seed_opt->count() > 0) opt.seed = seed_flag;
  if (cap_opt->count() > 0) opt.cap = cap_flag;

  try {
    return dispatch(app.get_subcommands().front()->get_name(), opt);
  } catch (const Error& e) {
    Json err = Json::object();
    err["error"] = e.code_name();
    err["message"] = e.what();
    std::cerr << err.dump(2) << "\n";
    return e.code() == ErrorCode::MalformedInput ? 2 : 1;
  } catch (const std::exception& e) {
    Json err = Json::object();
    err["error"] = "InternalError";
    err["message"] = e.what();
    std::cerr << err.dump(2) << "\n";
    return 1;
  }
}
