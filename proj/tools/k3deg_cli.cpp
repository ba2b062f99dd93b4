// k3deg command line: validation, lattice reports and arithmetic tables for
// combinatorial K3 degeneration data.

#include <k3deg/k3deg.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

using namespace k3deg;
using Clock = std::chrono::steady_clock;

struct RunReport {
  std::string command;
  std::string digest;
  Json results = Json::object();
  std::vector<CheckResult> checks;
  double duration_ms = 0;

  void check(std::string name, bool pass, std::string location = "", std::string message = "") {
    checks.push_back(CheckResult{std::move(name), std::move(location), pass, std::move(message)});
  }

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  Json to_json() const {
    Json j;
    j["command"] = command;
    j["inputs_digest"] = digest;
    j["results"] = results;
    Json cs = Json::array();
    for (const auto& c : checks)
      cs.push_back(Json{{"name", c.name}, {"location", c.location}, {"pass", c.pass}, {"message", c.message}});
    j["checks"] = cs;
    j["pass"] = all_pass();
    j["duration_ms"] = duration_ms;
    return j;
  }
};

uint64_t fnv1a(const std::string& data, uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string digest_of(const std::vector<std::string>& parts) {
  uint64_t h = 1469598103934665603ull;
  for (const auto& p : parts) {
    h = fnv1a(p, h);
    h = fnv1a("\x1f", h);
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

KulikovConfig load_config(const std::string& path, RunReport& rep) {
  std::string text = slurp(path);
  rep.digest = digest_of({rep.command, text});
  return config_from_json(Json::parse(text));
}

IntegerLattice load_lattice_arg(const std::string& arg, RunReport& rep) {
  if (auto named = lattice_from_name(arg)) {
    rep.digest = digest_of({rep.command, arg});
    return *named;
  }
  std::string text = slurp(arg);
  rep.digest = digest_of({rep.command, text});
  return lattice_from_json(Json::parse(text));
}

Vec parse_vector(const std::string& s) {
  Vec v;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (!cur.empty()) v.push_back(Int(cur));
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  return v;
}

void emit(const RunReport& rep, bool as_json, const std::string& text) {
  if (as_json)
    std::cout << rep.to_json().dump(2) << "\n";
  else
    std::cout << text;
}

std::string render_checks(const RunReport& rep) {
  std::ostringstream out;
  for (const auto& c : rep.checks) {
    out << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name;
    if (!c.location.empty()) out << " @ " << c.location;
    if (!c.message.empty()) out << " (" << c.message << ")";
    out << "\n";
  }
  return out.str();
}

void report_validation(RunReport& rep, const ValidationReport& v) {
  for (const CheckResult& c : v.checks) rep.checks.push_back(c);
  rep.results["valid"] = v.valid;
  rep.results["total_charge"] = int_to_json(v.total_charge);
  Json qs = Json::array();
  for (const Int& q : v.component_charges) qs.push_back(int_to_json(q));
  rep.results["component_charges"] = qs;
  Json notes = Json::array();
  for (const auto& n : v.notes) notes.push_back(n);
  rep.results["notes"] = notes;
}

int cmd_validate(const std::string& path, bool as_json) {
  RunReport rep;
  rep.command = "validate";
  auto t0 = Clock::now();
  KulikovConfig k = load_config(path, rep);
  ValidationReport v = validate(k);
  report_validation(rep, v);
  if (k.type == KulikovType::III && !k.triangles.empty()) {
    rep.results["triple_points"] = triple_point_count(k);
    rep.results["euler_ok"] = euler_check(k);
  }
  rep.duration_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  std::ostringstream out;
  out << "validate " << path << ": type " << to_string(k.type) << ", " << k.components.size() << " components, "
      << k.edges.size() << " double curves";
  if (k.type == KulikovType::III && !k.triangles.empty()) out << ", " << k.triangles.size() << " triple points";
  out << "\n" << render_checks(rep);
  out << "  total charge: " << to_string(v.total_charge) << "\n";
  out << (v.valid ? "VALID\n" : "INVALID\n");
  emit(rep, as_json, out.str());
  return rep.all_pass() ? 0 : 1;
}

int cmd_lambda(const std::string& path, bool as_json) {
  RunReport rep;
  rep.command = "lambda";
  auto t0 = Clock::now();
  KulikovConfig k = load_config(path, rep);
  LambdaReport lam = lambda_lattice(k);
  rep.check("xi classes are numerically Cartier", lam.xi_in_lambda_tilde);
  rep.check("xi classes sum to zero", lam.xi_sum_zero);
  rep.check("Xi equals the radical of LambdaTilde", lam.xi_equals_radical);
  rep.check("Lambda is torsion-free", lam.torsion_free);
  int expect_rank = k.type == KulikovType::III ? 19 : 18;
  rep.check("rank Lambda = " + std::to_string(expect_rank), lam.lambda.rank() == expect_rank, "",
            "rank " + std::to_string(lam.lambda.rank()));
  Signature expect_sig{1, expect_rank - 1, 0};
  rep.check("signature (1," + std::to_string(expect_rank - 1) + ")", lam.lambda_signature == expect_sig);
  rep.results["lambda_tilde_rank"] = lam.tilde.lattice.rank();
  rep.results["xi_rank"] = lam.xi_rank;
  rep.results["lambda_rank"] = lam.lambda.rank();
  rep.results["lambda_det"] = int_to_json(lam.lambda.det());
  rep.results["lambda_even"] = lam.lambda.even();
  rep.results["signature"] =
      Json::array({lam.lambda_signature.positive, lam.lambda_signature.negative, lam.lambda_signature.zero});
  rep.duration_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  std::ostringstream out;
  out << "lambda " << path << ":\n";
  out << "  rank LambdaTilde = " << lam.tilde.lattice.rank() << ", rank Xi = " << lam.xi_rank
      << ", rank Lambda = " << lam.lambda.rank() << "\n";
  out << "  det Lambda = " << to_string(lam.lambda.det()) << ", signature (" << lam.lambda_signature.positive << ","
      << lam.lambda_signature.negative << "," << lam.lambda_signature.zero << ")"
      << (lam.lambda.even() ? ", even" : ", odd") << "\n";
  out << render_checks(rep);
  emit(rep, as_json, out.str());
  return rep.all_pass() ? 0 : 1;
}

int cmd_quasi_iso(const std::string& path, bool flip, bool as_json) {
  RunReport rep;
  rep.command = "quasi-iso";
  auto t0 = Clock::now();
  KulikovConfig k = load_config(path, rep);
  GluePeriodReport gp = glue_period_report(k, flip);
  NcLattice nc = numerically_cartier_lattice(k);
  rep.check("gluing complex -> intermediate complex is a quasi-isomorphism", gp.gluing_quasi_iso);
  rep.check("period complex -> intermediate complex is a quasi-isomorphism", gp.period_quasi_iso);
  rep.check("H0(G) and the numerically Cartier lattice have equal rank", gp.h0_gluing.rank() == nc.lattice.rank());
  rep.check("equal signature", signature(gp.h0_gluing) == signature(nc.lattice));
  rep.check("equal discriminant invariants",
            torsion_invariants(gp.h0_gluing.gram()) == torsion_invariants(nc.lattice.gram()) &&
                smith_diagonal(gp.h0_gluing.gram()).size() == smith_diagonal(nc.lattice.gram()).size());
  rep.results["g0_rank"] = gp.gluing.complex.c0;
  rep.results["g1_rank"] = gp.gluing.complex.c1;
  rep.results["h0_rank"] = gp.h0_gluing.rank();
  rep.duration_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  std::ostringstream out;
  out << "quasi-iso " << path << ": G0 rank " << gp.gluing.complex.c0 << ", G1 rank " << gp.gluing.complex.c1
      << ", H0 rank " << gp.h0_gluing.rank() << "\n"
      << render_checks(rep);
  emit(rep, as_json, out.str());
  return rep.all_pass() ? 0 : 1;
}

int cmd_basechange(const std::string& path, int order, const std::string& out_path, bool as_json) {
  RunReport rep;
  rep.command = "basechange";
  auto t0 = Clock::now();
  KulikovConfig k = load_config(path, rep);
  KulikovConfig resolved = base_change_resolution(k, order);
  ValidationReport v = validate(resolved);
  report_validation(rep, v);
  if (resolved.type == KulikovType::III) {
    rep.results["triple_points"] = triple_point_count(resolved);
    rep.check("triple points scale by k^2",
              triple_point_count(resolved) == order * order * triple_point_count(k));
  }
  rep.results["components"] = resolved.components.size();
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << config_to_json(resolved).dump(1) << "\n";
    rep.results["written"] = out_path;
  } else if (!as_json) {
    rep.results["config"] = "pass -o FILE to write the resolved configuration";
  } else {
    rep.results["config"] = config_to_json(resolved);
  }
  rep.duration_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  std::ostringstream out;
  out << "basechange " << path << " k=" << order << ": " << resolved.components.size() << " components, "
      << resolved.edges.size() << " double curves";
  if (resolved.type == KulikovType::III) out << ", " << resolved.triangles.size() << " triple points";
  out << "\n" << render_checks(rep);
  if (!out_path.empty()) out << "  wrote " << out_path << "\n";
  emit(rep, as_json, out.str());
  return rep.all_pass() ? 0 : 1;
}

int cmd_cusps(const std::string& d_str, bool as_json) {
  RunReport rep;
  rep.command = "cusps";
  rep.digest = digest_of({rep.command, d_str});
  auto t0 = Clock::now();
  Int d(d_str);
  auto cusps = zero_cusp_invariants(d);
  SquarefreeSplit sq = squarefree_split(d);
  rep.check("count matches floor((N+2)/2)", Int(cusps.size()) == zero_cusp_count(d));
  bool isotropic = true;
  for (const auto& c : cusps)
    if ((c.delta_star * c.delta_star) % (4 * d) != 0) isotropic = false;
  rep.check("all delta* are isotropic", isotropic);
  rep.results["d"] = int_to_json(d);
  rep.results["N"] = int_to_json(sq.n);
  rep.results["d0"] = int_to_json(sq.d0);
  rep.results["count"] = int_to_json(zero_cusp_count(d));
  Json list = Json::array();
  for (const auto& c : cusps) list.push_back(Json{{"q", int_to_json(c.q)}, {"delta_star", int_to_json(c.delta_star)}});
  rep.results["cusps"] = list;
  rep.duration_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  std::ostringstream out;
  out << "d = " << to_string(d) << " = " << to_string(sq.n) << "^2 * " << to_string(sq.d0) << "\n";
  out << "0-cusps: " << to_string(zero_cusp_count(d)) << "\n";
  out << "  q    delta* (in Z/" << to_string(Int(2 * d)) << ")\n";
  for (const auto& c : cusps) out << "  " << to_string(c.q) << "    " << to_string(c.delta_star) << "\n";
  emit(rep, as_json, out.str());
  return rep.all_pass() ? 0 : 1;
}

int cmd_yz(int dmax, bool oracle, bool as_json) {
  RunReport rep;
  rep.command = "yz";
  rep.digest = digest_of({rep.command, std::to_string(dmax), oracle ? "oracle" : ""});
  auto t0 = Clock::now();
  auto counts = yz_counts(dmax);
  if (oracle) {
    bool agree = true;
    std::string where;
    for (int d = 1; d <= dmax; ++d)
      if (counts[d - 1] != colored_partitions(d + 1, 24)) {
        agree = false;
        where = "d = " + std::to_string(d);
      }
    rep.check("series matches the 24-colored partition oracle", agree, where);
  }
  Json table = Json::array();
  for (int d = 1; d <= dmax; ++d) table.push_back(Json::array({d, int_to_json(counts[d - 1])}));
  rep.results["n_d"] = table;
  rep.duration_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  std::ostringstream out;
  out << "  d    n_d\n";
  for (int d = 1; d <= dmax; ++d) out << "  " << d << "    " << to_string(counts[d - 1]) << "\n";
  out << render_checks(rep);
  emit(rep, as_json, out.str());
  return rep.all_pass() ? 0 : 1;
}

int cmd_walls(const std::string& lattice_arg, int bound, bool as_json) {
  RunReport rep;
  rep.command = "walls";
  auto t0 = Clock::now();
  WallSet ws;
  bool used_hn = false;
  if (lattice_arg.size() > 2 && lattice_arg.compare(0, 2, "H(") == 0 && bound <= 0) {
    // fully explicit description, complete by construction
    IntegerLattice m = *lattice_from_name(lattice_arg);
    rep.digest = digest_of({rep.command, lattice_arg});
    ws = h_n_walls(m.gram()(0, 1));
    used_hn = true;
  } else {
    IntegerLattice m = load_lattice_arg(lattice_arg, rep);
    Int b = bound > 0 ? Int(bound) : Int(10);
    if (m.rank() == 2 && m.gram()(0, 0) == 0 && m.gram()(1, 1) == 0 && bound <= 0) b = m.gram()(0, 1);
    ws = rank2_walls(m, b);
  }
  rep.results["walls"] = Json::array();
  for (const Wall& w : ws.walls) {
    Json jw{{"ray", vec_to_json(w.ray)}, {"normal", vec_to_json(w.normal)}, {"in_m_root", w.in_m_root}};
    if (w.ab) jw["ab"] = Json::array({int_to_json(w.ab->first), int_to_json(w.ab->second)});
    rep.results["walls"].push_back(jw);
  }
  rep.results["chambers"] = int_to_json(ws.chamber_count);
  rep.results["assumes_ambient_realizability"] = ws.assumes_ambient_realizability;
  rep.duration_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  std::ostringstream out;
  out << "walls of " << lattice_arg << (used_hn ? " (explicit H(n) description)" : "") << ":\n";
  for (const Wall& w : ws.walls) {
    out << "  ray (" << to_string(w.ray[0]) << "," << to_string(w.ray[1]) << ")";
    if (w.ab) out << "  from (a,b) = (" << to_string(w.ab->first) << "," << to_string(w.ab->second) << ")";
    if (w.in_m_root) out << "  [root in M]";
    out << "\n";
  }
  out << "chambers: " << to_string(ws.chamber_count) << "\n";
  if (ws.assumes_ambient_realizability) out << "(assuming ambient realizability of the rank-3 extensions)\n";
  emit(rep, as_json, out.str());
  return 0;
}

int cmd_monodromy(const std::string& lattice_arg, const std::string& delta_str, const std::string& lambda_str,
                  bool as_json) {
  RunReport rep;
  rep.command = "monodromy";
  auto t0 = Clock::now();
  IntegerLattice l = load_lattice_arg(lattice_arg, rep);
  rep.digest = digest_of({rep.command, rep.digest, delta_str, lambda_str});
  MonodromyData m = make_monodromy_data(l, parse_vector(delta_str), parse_vector(lambda_str));
  Mat n = monodromy_operator(m);
  Mat t = picard_lefschetz_T(m);
  DegenerationType type = classify_type(m);
  Mat gn = l.gram() * n;
  rep.check("N is skew-adjoint for the form", (gn + gn.transposed()).is_zero());
  rep.check("N^3 = 0", (n * n * n).is_zero());
  rep.check("T is an isometry", t.transposed() * (l.gram() * t) == l.gram());
  Mat u = t - Mat::identity(l.rank());
  rep.check("T is unipotent", (u * u * u).is_zero());
  rep.results["type"] = to_string(type);
  rep.results["lambda_square"] = int_to_json(l.norm(m.lambda));
  rep.results["N"] = matrix_to_json(n);
  rep.results["T"] = matrix_to_json(t);
  rep.duration_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  std::ostringstream out;
  out << "type " << to_string(type) << ", lambda^2 = " << to_string(l.norm(m.lambda)) << "\n";
  out << "N =\n";
  for (int i = 0; i < n.rows; ++i) {
    out << "  ";
    for (int j = 0; j < n.cols; ++j) out << to_string(n(i, j)) << (j + 1 < n.cols ? " " : "\n");
  }
  out << render_checks(rep);
  emit(rep, as_json, out.str());
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-integer toolkit for combinatorial K3 surface degenerations"};
  app.require_subcommand(1);
  app.footer("The environment variable K3DEG_THREADS caps the worker threads used by enumeration.");

  bool as_json = false;

  std::string config_path, out_path, lattice_arg, delta_str, lambda_str, d_str;
  int order = 1, dmax = 1, bound = 0;
  bool oracle = false, flip = false;

  auto* validate_cmd = app.add_subcommand("validate", "run the Kulikov surface checks on a configuration");
  validate_cmd->add_option("config", config_path, "configuration JSON file")->required();

  auto* lambda_cmd = app.add_subcommand("lambda", "numerically Cartier lattice, Xi and Lambda report");
  lambda_cmd->add_option("config", config_path, "configuration JSON file")->required();

  auto* qi_cmd = app.add_subcommand("quasi-iso", "compare the gluing and period complexes");
  qi_cmd->add_option("config", config_path, "configuration JSON with ordered toric models")->required();
  qi_cmd->add_flag("--flip", flip, "flip the orientation convention");

  auto* bc_cmd = app.add_subcommand("basechange", "standard order-k base change resolution");
  bc_cmd->add_option("config", config_path, "configuration JSON file")->required();
  bc_cmd->add_option("k", order, "base change order (>= 1)")->required();
  bc_cmd->add_option("-o,--out", out_path, "write the resolved configuration here");

  auto* cusps_cmd = app.add_subcommand("cusps", "0-cusp count and invariants for F_2d");
  cusps_cmd->add_option("d", d_str, "polarization half-degree d >= 1")->required();

  auto* yz_cmd = app.add_subcommand("yz", "Yau-Zaslow rational curve counts n_d");
  yz_cmd->add_option("dmax", dmax, "table up to this degree")->required();
  yz_cmd->add_flag("--oracle", oracle, "cross-check against the colored-partition oracle");

  auto* walls_cmd = app.add_subcommand("walls", "small-cone walls of a rank-2 hyperbolic lattice");
  walls_cmd->add_option("lattice", lattice_arg, "H(n) or a lattice JSON file")->required();
  walls_cmd->add_option("--bound", bound, "height bound for the dual-vector search");

  auto* mono_cmd = app.add_subcommand("monodromy", "Picard-Lefschetz operator from (delta, lambda)");
  mono_cmd->add_option("lattice", lattice_arg, "named lattice (H, LK3, ...) or a lattice JSON file")->required();
  mono_cmd->add_option("delta", delta_str, "comma-separated coordinates of delta")->required();
  mono_cmd->add_option("lambda", lambda_str, "comma-separated coordinates of lambda")->required();

  for (auto* sc : {validate_cmd, lambda_cmd, qi_cmd, bc_cmd, cusps_cmd, yz_cmd, walls_cmd, mono_cmd})
    sc->add_flag("--json", as_json, "emit a structured JSON report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate_cmd->parsed()) return cmd_validate(config_path, as_json);
    if (lambda_cmd->parsed()) return cmd_lambda(config_path, as_json);
    if (qi_cmd->parsed()) return cmd_quasi_iso(config_path, flip, as_json);
    if (bc_cmd->parsed()) return cmd_basechange(config_path, order, out_path, as_json);
    if (cusps_cmd->parsed()) return cmd_cusps(d_str, as_json);
    if (yz_cmd->parsed()) return cmd_yz(dmax, oracle, as_json);
    if (walls_cmd->parsed()) return cmd_walls(lattice_arg, bound, as_json);
    if (mono_cmd->parsed()) return cmd_monodromy(lattice_arg, delta_str, lambda_str, as_json);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
