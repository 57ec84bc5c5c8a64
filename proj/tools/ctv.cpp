// ctv: construct complexes, compute F_p homology, search colored Tverberg
// partitions, run the verification battery.
//
// exit: 0 certified result, 1 verification failed, 2 budget exhausted,
//       3 input error, 4 face guard exceeded (CTV_FACE_GUARD raises it)

#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ctv/descriptor.hpp"
#include "ctv/verify_suite.hpp"

using namespace ctv;

namespace {

enum Exit { kOk = 0, kFailed = 1, kBudget = 2, kInput = 3, kGuard = 4 };

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(what + " is not valid JSON: " + e.what());
  }
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream s;
  for (unsigned i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return s.str();
}

void emit(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw InputError("cannot write '" + out + "'");
  f << j.dump(2) << "\n";
}

std::string tuple_str(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

json manifest(const std::string& sub, const std::vector<std::string>& inputs, json params, std::uint64_t seed,
              const std::string& out) {
  return json{{"subcommand", sub},       {"inputs", inputs},
              {"parameters", params},    {"seed", seed},
              {"face_guard", face_guard()}, {"output", out.empty() ? "-" : out}};
}

// ---- complex

struct ComplexArgs {
  std::string op;
  std::size_t rows = 0, cols = 0, n = 0;
  std::uint32_t r = 2, l = 2;
  std::vector<std::string> of;
  std::string colors, descriptor, out;
};

json colors_arg(const std::string& text) {
  if (text.empty()) throw InputError("--colors is required");
  return parse_json(text.front() == '[' || text.front() == '{' ? text : read_file(text), "--colors");
}

json descriptor_for(const ComplexArgs& a) {
  auto one_of = [&] {
    if (a.of.size() != 1) throw InputError(a.op + " needs exactly one --of operand");
    return parse_operand(a.of.front());
  };
  if (a.op == "chessboard") return {{"op", "chessboard"}, {"rows", a.rows}, {"cols", a.cols}};
  if (a.op == "simplex") return {{"op", "simplex"}, {"n", a.n}};
  if (a.op == "join") {
    json args = json::array();
    for (const auto& o : a.of) args.push_back(parse_operand(o));
    return {{"op", "join"}, {"args", args}};
  }
  if (a.op == "join-power") return {{"op", "join_power"}, {"arg", one_of()}, {"r", a.r}};
  if (a.op == "deleted-join") return {{"op", "deleted_join"}, {"arg", one_of()}, {"r", a.r}, {"l", a.l}};
  if (a.op == "deleted-product") return {{"op", "deleted_product"}, {"arg", one_of()}, {"r", a.r}, {"l", a.l}};
  if (a.op == "rainbow") return {{"op", "rainbow"}, {"colors", colors_arg(a.colors)}};
  if (a.op == "test-space") return {{"op", "test_space"}, {"colors", colors_arg(a.colors)}, {"r", a.r}};
  if (a.op == "descriptor") {
    if (a.descriptor.empty()) throw InputError("--descriptor is required");
    const std::string& d = a.descriptor;
    return parse_json(d.front() == '{' ? d : read_file(d), "--descriptor");
  }
  throw InputError("unknown construction '" + a.op + "'");
}

int cmd_complex(const ComplexArgs& a) {
  const json desc = descriptor_for(a);
  Built built = build(desc);
  std::vector<std::size_t> f;
  long long chi = 0;
  json out;
  if (auto* s = std::get_if<SimplicialComplex>(&built)) {
    f = f_vector(*s);
    chi = euler_characteristic(*s);
    out = complex_to_json(*s);
  } else {
    auto& c = std::get<CellComplex>(built);
    f = c.f_vector();
    chi = c.euler_characteristic();
    out = cell_complex_to_json(c);
  }
  emit(out, a.out);
  std::ostream& summary = (a.out.empty() || a.out == "-") ? std::cerr : std::cout;
  summary << "f = " << tuple_str(f) << "  chi = " << chi << "\n";
  return kOk;
}

// ---- homology

int cmd_homology(unsigned p, const std::string& path, const std::string& out) {
  require_supported_prime(p);
  const std::string text = read_file(path);
  const json j = parse_json(text, "'" + path + "'");
  json report;
  if (j.contains("cells_by_dim")) {
    auto cells = cell_complex_from_json(j);
    report = homology_to_json(betti(cells, p), cells.euler_characteristic());
  } else {
    auto x = complex_from_json(j);
    report = homology_to_json(betti(x, p), euler_characteristic(x));
  }
  report["input_sha256"] = sha256_hex(text);
  emit(report, out);
  return kOk;
}

// ---- tverberg

struct TverbergArgs {
  std::string config;
  bool witness_search = false, lift = false, roundtrip = false;
  std::size_t d = 1;
  std::uint32_t r = 2;
  std::uint64_t seed = 1, budget = 0;
  unsigned jobs = 1;
  std::string out;
};

int cmd_tverberg(const TverbergArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };
  // --jobs is left out: it never changes a result
  json params{{"witness_search", a.witness_search}, {"lift", a.lift}, {"verify_roundtrip", a.roundtrip},
              {"budget", a.budget}};

  if (a.witness_search) {
    params["d"] = a.d;
    params["r"] = a.r;
    auto t = find_tightness_witness(a.d, a.r, a.budget == 0 ? 5000 : a.budget, a.seed, {a.jobs, 0});
    json out{{"outcome", t.witness ? "WITNESS" : "BUDGET_EXHAUSTED"},
             {"configurations_tried", t.configurations_tried},
             {"manifest", manifest("tverberg", {}, params, a.seed, a.out)}};
    if (t.witness) {
      out["config"] = configuration_to_json(*t.witness);
      out["report"] = report_to_json(t.report);
    }
    out["wall_time_ms"] = elapsed_ms();
    emit(out, a.out);
    return t.witness ? kOk : kBudget;
  }

  if (a.config.empty()) throw InputError("a configuration file is required");
  const std::string text = read_file(a.config);
  auto config = configuration_from_json(parse_json(text, "'" + a.config + "'"));
  const std::string hash = sha256_hex(text);

  if (a.lift) {
    if (config.target != Target::euclidean) throw InputError("--lift needs a euclidean configuration");
    emit(configuration_to_json(lift_configuration(config)), a.out);
    return kOk;
  }
  if (a.roundtrip) {
    if (config.target != Target::euclidean) throw InputError("--verify-roundtrip needs a euclidean configuration");
    auto rt = verify_reduction_roundtrip(config);
    json out{{"outcome", rt.ok ? "VERIFIED" : "FAILED"},
             {"lifted_partitions", rt.lifted_partitions},
             {"input_sha256", hash},
             {"manifest", manifest("tverberg", {a.config}, params, a.seed, a.out)}};
    if (!rt.ok) out["failure"] = rt.failure;
    out["wall_time_ms"] = elapsed_ms();
    emit(out, a.out);
    return rt.ok ? kOk : kFailed;
  }

  auto report = find_partition(config, {a.jobs, a.budget});
  json out = report_to_json(report);
  out["input_sha256"] = hash;
  out["manifest"] = manifest("tverberg", {a.config}, params, a.seed, a.out);
  out["wall_time_ms"] = elapsed_ms();
  emit(out, a.out);
  return report.outcome == Outcome::budget_exhausted ? kBudget : kOk;
}

// ---- verify

int cmd_verify(const SuiteOptions& o, const std::string& out) {
  json checks = json::array();
  bool all = true;
  run_suite(o, [&](const CheckResult& r) {
    std::cerr << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << std::fixed << std::setprecision(2) << r.seconds
              << " s) " << r.detail << "\n";
    json c{{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}};
    if (!r.reproduction.is_null()) c["reproduction"] = r.reproduction;
    checks.push_back(std::move(c));
    all = all && r.passed;
  });
  json params{{"only", o.only}};
  if (o.trials) params["trials"] = *o.trials;
  emit(json{{"passed", all}, {"checks", checks}, {"manifest", manifest("verify", {}, params, o.seed, out)}}, out);
  return all ? kOk : kFailed;
}

void error_json(const char* kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"colored Tverberg verifier"};
  app.require_subcommand(1);

  ComplexArgs ca;
  auto* complex = app.add_subcommand("complex", "build a complex and write it as JSON");
  complex->add_option("construction", ca.op,
                      "chessboard | simplex | join | join-power | deleted-join | deleted-product | rainbow | "
                      "test-space | descriptor")
      ->required();
  complex->add_option("--rows", ca.rows);
  complex->add_option("--cols", ca.cols);
  complex->add_option("--n", ca.n, "simplex dimension");
  complex->add_option("--r", ca.r);
  complex->add_option("--l", ca.l);
  complex->add_option("--of", ca.of, "operand: simplex:N boundary:N points:k s0 cycle:k chessboard:R,K file:PATH or JSON");
  complex->add_option("--colors", ca.colors, "JSON array or file");
  complex->add_option("--descriptor", ca.descriptor, "JSON descriptor or file");
  complex->add_option("--out", ca.out);

  unsigned p = 2;
  std::string hpath, hout;
  auto* homology = app.add_subcommand("homology", "reduced F_p Betti numbers of a complex file");
  homology->add_option("--mod", p, "prime")->required();
  homology->add_option("file", hpath)->required();
  homology->add_option("--out", hout);

  TverbergArgs ta;
  auto* tverberg = app.add_subcommand("tverberg", "colored Tverberg partition search");
  tverberg->add_option("config", ta.config);
  tverberg->add_flag("--witness-search", ta.witness_search, "search for a tightness witness (uses --d --r --seed)");
  tverberg->add_flag("--lift", ta.lift, "emit the lifted (d+1) configuration");
  tverberg->add_flag("--verify-roundtrip", ta.roundtrip, "lift, solve, restrict and check");
  tverberg->add_option("--d", ta.d);
  tverberg->add_option("--r", ta.r);
  tverberg->add_option("--seed", ta.seed);
  tverberg->add_option("--jobs", ta.jobs)->check(CLI::PositiveNumber);
  tverberg->add_option("--budget", ta.budget, "candidate partitions, 0 = unlimited");
  tverberg->add_option("--out", ta.out);

  SuiteOptions so;
  std::size_t trials = 0;
  std::string vout;
  auto* verify = app.add_subcommand("verify", "run the verification battery");
  verify->add_option("--only", so.only, "check name (repeatable)");
  verify->add_option("--seed", so.seed);
  auto* trials_opt = verify->add_option("--trials", trials);
  verify->add_option("--jobs", so.jobs)->check(CLI::PositiveNumber);
  verify->add_option("--out", vout);
  verify->footer([] {
    std::string s = "checks:";
    for (const auto& n : check_names()) s += " " + n;
    return s;
  }());

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*complex) return cmd_complex(ca);
    if (*homology) return cmd_homology(p, hpath, hout);
    if (*tverberg) return cmd_tverberg(ta);
    if (*verify) {
      if (*trials_opt) so.trials = trials;
      return cmd_verify(so, vout);
    }
  } catch (const GuardExceeded& e) {
    std::cerr << json{{"error", "guard_exceeded"}, {"limit", e.limit()}, {"message", e.what()},
                      {"hint", "raise with CTV_FACE_GUARD"}}.dump()
              << "\n";
    return kGuard;
  } catch (const json::exception& e) {
    error_json("input", e.what());
    return kInput;
  } catch (const std::invalid_argument& e) {
    error_json("input", e.what());
    return kInput;
  } catch (const ConstructionError& e) {
    error_json("input", e.what());
    return kInput;
  }
  return kInput;
}
