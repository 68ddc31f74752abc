// Copyright 2026 The conewitness Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "conewitness/errors.hpp"
#include "conewitness/exposedness.hpp"
#include "conewitness/io.hpp"
#include "conewitness/map_catalog.hpp"
#include "conewitness/positivity.hpp"

namespace conewitness::cli {

namespace {

using io::Json;

constexpr std::uint64_t kDefaultSeed = 1;

struct MapOptions {
  std::string name;
  int n = 0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  std::string u_file;
  std::string v_file;
  std::string choi_file;
  int dim_in = 0;
  int dim_out = 0;
};

void add_map_options(CLI::App* cmd, MapOptions& o) {
  cmd->add_option("name", o.name, "transpose | reduction | choi-family | breuer-hall | robertson | ad | co-ad"
                                  " | from-choi")
      ->required();
  cmd->add_option("--n", o.n, "matrix dimension (transpose, reduction; breuer-hall without --u draws a random U)");
  cmd->add_option("--a", o.a, "choi-family parameter a");
  cmd->add_option("--b", o.b, "choi-family parameter b");
  cmd->add_option("--c", o.c, "choi-family parameter c");
  cmd->add_option("--u", o.u_file, "MatrixFile holding an antisymmetric unitary (breuer-hall)");
  cmd->add_option("--v", o.v_file, "MatrixFile holding V (ad, co-ad)");
  cmd->add_option("--choi", o.choi_file, "Choi MatrixFile (from-choi)");
  cmd->add_option("--dim-in", o.dim_in, "input dimension of a from-choi map");
  cmd->add_option("--dim-out", o.dim_out, "output dimension of a from-choi map");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CONEWITNESS_SEED")) {
    try {
      std::size_t used = 0;
      const std::string s(env);
      const unsigned long long v = std::stoull(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::kParseError, "CONEWITNESS_SEED is not an unsigned integer");
  }
  return kDefaultSeed;
}

std::pair<int, int> choi_dims(const io::MatrixFile& f, int dim_in, int dim_out) {
  const int size = static_cast<int>(f.matrix.rows());
  if (f.matrix.rows() != f.matrix.cols()) throw Error(ErrorKind::kDimensionMismatch, "Choi matrix must be square");
  if (dim_in > 0 || dim_out > 0) {
    if (dim_in * dim_out != size) throw Error(ErrorKind::kDimensionMismatch, "--dim-in * --dim-out must equal the size");
    return {dim_in, dim_out};
  }
  if (f.dim_in) return {*f.dim_in, *f.dim_out};
  int root = 1;
  while (root * root < size) ++root;
  if (root * root != size) {
    throw Error(ErrorKind::kDimensionMismatch, "cannot infer dimensions of a " + std::to_string(size) +
                                                   "x" + std::to_string(size) + " Choi matrix; pass --dim-in/--dim-out");
  }
  return {root, root};
}

MapDescriptor make_descriptor(const MapOptions& o, Rng& rng) {
  const std::string& name = o.name;
  if (name == "transpose") {
    if (o.n < 1) throw Error(ErrorKind::kPreconditionViolated, "transpose needs --n >= 1");
    return descriptor::Transposition{o.n};
  }
  if (name == "reduction") {
    if (o.n < 2) throw Error(ErrorKind::kPreconditionViolated, "reduction needs --n >= 2");
    return descriptor::Reduction{o.n};
  }
  if (name == "choi-family") return descriptor::ChoiFamily{ChoiFamilyParams{o.a, o.b, o.c}};
  if (name == "robertson") return descriptor::Robertson{};
  if (name == "breuer-hall") {
    if (!o.u_file.empty()) return descriptor::BreuerHall{AntisymmetricUnitary::make(io::read_matrix_file(o.u_file).matrix)};
    if (o.n < 2) throw Error(ErrorKind::kPreconditionViolated, "breuer-hall needs --u FILE or an even --n");
    return descriptor::BreuerHall{random_antisymmetric_unitary(o.n, rng)};
  }
  if (name == "ad" || name == "co-ad") {
    if (o.v_file.empty()) throw Error(ErrorKind::kPreconditionViolated, name + " needs --v FILE");
    ComplexMatrix v = io::read_matrix_file(o.v_file).matrix;
    if (name == "ad") return descriptor::Ad{std::move(v)};
    return descriptor::CoAd{std::move(v)};
  }
  if (name == "from-choi") {
    if (o.choi_file.empty()) throw Error(ErrorKind::kPreconditionViolated, "from-choi needs --choi FILE");
    io::MatrixFile f = io::read_matrix_file(o.choi_file);
    const auto [n, m] = choi_dims(f, o.dim_in, o.dim_out);
    return descriptor::FromChoi{std::move(f.matrix), n, m};
  }
  throw Error(ErrorKind::kPreconditionViolated, "unknown map name '" + name + "'");
}

Json seesaw_json(const SeeSawConfig& c) {
  return Json{{"restarts", c.restarts}, {"max_iters", c.max_iters}, {"stationarity", c.stationarity}};
}

Json pair_json(const ProductPair& p) { return Json{{"x", io::vector_to_json(p.x)}, {"y", io::vector_to_json(p.y)}}; }

Json bp_report_json(const BlockPositivityReport& r) {
  return Json{{"min_value", r.min_value},         {"argmin", pair_json(r.argmin)},
              {"restarts_used", r.restarts_used}, {"converged", r.converged},
              {"tolerance", r.tolerance},         {"best_restart", r.best_restart},
              {"total_iterations", r.total_iterations}};
}

Json document(const std::vector<std::string>& args, const std::string& command, std::uint64_t seed) {
  Json argv = Json::array();
  for (std::size_t i = 1; i < args.size(); ++i) argv.push_back(args[i]);
  return Json{{"schema_version", io::kSchemaVersion}, {"command", command}, {"argv", argv}, {"seed", seed}};
}

void emit(const Json& doc, const std::string& out_path, std::ostream& out) {
  const std::string text = io::canonical_dump(doc) + "\n";
  if (out_path.empty()) {
    out << text;
  } else {
    io::write_atomically(out_path, text);
  }
}

// ---------------------------------------------------------------- catalog

int cmd_catalog(const MapOptions& o, std::optional<std::uint64_t> seed_flag, const std::string& out_path,
                std::ostream& out) {
  Rng rng(resolve_seed(seed_flag));
  const LinearMatrixMap phi = build_map(make_descriptor(o, rng));
  io::MatrixFile f{phi.choi(), true, phi.dim_in(), phi.dim_out()};
  emit(io::matrix_file_json(f), out_path, out);
  return kExitOk;
}

// ---------------------------------------------------------------- check

int cmd_check(const std::vector<std::string>& args, const std::string& file, const std::string& mode,
              std::optional<std::uint64_t> seed_flag, const SeeSawConfig& cfg, int dim_in, int dim_out,
              const std::string& out_path, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(seed_flag);
  const io::MatrixFile f = io::read_matrix_file(file);
  const auto [n, m] = choi_dims(f, dim_in, dim_out);
  const LinearMatrixMap phi = map_from_choi(f.matrix, n, m);

  Json doc = document(args, "check", seed);
  doc["config"] = Json{{"mode", mode}, {"seesaw", seesaw_json(cfg)}, {"dim_in", n}, {"dim_out", m}};
  int code = kExitOk;
  if (mode == "block-positive") {
    Rng rng(seed);
    const BlockPositivityVerdict v = is_block_positive(phi.choi(), n, m, cfg, rng);
    Json result = bp_report_json(v.report);
    result["verdict"] = v.verdict == BlockPositivity::kEvidenceBlockPositive ? "EVIDENCE_BP" : "CERTIFIED_NOT_BP";
    doc["result"] = std::move(result);
    if (!v.report.converged) code = kExitNotConverged;
  } else {
    const PositivityCertificate c = mode == "cp" ? is_completely_positive(phi) : is_completely_copositive(phi);
    doc["result"] = Json{{"holds", c.holds},
                         {"min_eigenvalue", c.min_eigenvalue},
                         {"eigenvector", io::vector_to_json(c.eigenvector)},
                         {"verdict", c.holds ? "TRUE" : "FALSE"}};
  }
  emit(doc, out_path, out);
  return code;
}

// ---------------------------------------------------------------- detect

int cmd_detect(const std::vector<std::string>& args, const std::string& state_file, const std::string& witness_file,
               const std::string& out_path, std::ostream& out) {
  const io::MatrixFile rho = io::read_matrix_file(state_file);
  const io::MatrixFile w = io::read_matrix_file(witness_file);
  const Tolerances tol;
  const DetectionResult r = detect_entanglement(rho.matrix, w.matrix, tol);
  Json doc = document(args, "detect", 0);
  doc.erase("seed");
  doc["config"] = Json{{"detection_tolerance", tol.detection}, {"state_tolerance", tol.state}};
  doc["result"] = Json{{"value", r.value}, {"verdict", r.detected ? "DETECTED" : "NOT_DETECTED"}};
  emit(doc, out_path, out);
  return kExitOk;
}

// ---------------------------------------------------------------- exposedness

Json counterexample_json(const Counterexample& c) {
  return Json{{"choi", io::matrix_to_json(c.choi)},
              {"evidence", bp_report_json(c.evidence)},
              {"ray_distance", c.ray_distance},
              {"max_face_residual", c.max_face_residual},
              {"candidate_index", c.candidate_index}};
}

int cmd_exposedness(const std::vector<std::string>& args, const MapOptions& o, std::optional<std::uint64_t> seed_flag,
                    const ExposednessConfig& cfg, const std::string& out_path, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(seed_flag);
  Rng rng(seed);
  const MapDescriptor d = make_descriptor(o, rng);
  const ExposednessReport r = exposedness_report(d, cfg, rng);

  Json doc = document(args, "exposedness", seed);
  doc["config"] = Json{{"map", descriptor_name(d)},
                       {"sample_count", cfg.sample_count},
                       {"budget", cfg.budget},
                       {"constraints", cfg.constraints == FaceConstraintKind::kValue ? "value" : "value+tangent"},
                       {"nullspace_relative", cfg.tol.nullspace_relative},
                       {"min_off_ray_angle", cfg.min_off_ray_angle},
                       {"certify", seesaw_json(cfg.certify)},
                       {"search", seesaw_json(cfg.search)}};
  doc["result"] = Json{{"verdict", std::string(verdict_name(r.verdict))},
                       {"nullspace_dim", r.nullspace_dim},
                       {"nullspace_dim_first_batch", r.nullspace_dim_first_batch},
                       {"samples_used", r.samples_used},
                       {"source", r.source == FaceSource::kAnalytic ? "analytic" : "numeric"},
                       {"searched", r.searched},
                       {"self_residual", r.self_residual},
                       {"smallest_kept_singular_value", r.smallest_kept},
                       {"largest_dropped_singular_value", r.largest_dropped},
                       {"positivity", bp_report_json(r.positivity)},
                       {"counterexample", r.counterexample ? counterexample_json(*r.counterexample) : Json(nullptr)}};
  emit(doc, out_path, out);
  return kExitOk;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::vector<std::string>& args, const std::string& suite, std::optional<std::uint64_t> seed_flag,
               int trials, int dim, const std::string& u_file, const std::string& out_path, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(seed_flag);
  Rng rng(seed);
  Json doc = document(args, "verify", seed);
  Json result;
  bool pass = false;
  if (trials < 1) throw Error(ErrorKind::kPreconditionViolated, "--trials must be positive");

  if (suite == "lemma1") {
    constexpr double kTol = 1e-10;
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      const ComplexMatrix v = random_unitary(dim, rng);
      const ComplexVector x = random_unit_vector(dim, rng);
      worst = std::max(worst, verify_lemma1(v, x));
    }
    pass = worst <= kTol;
    result = Json{{"max_residual", worst}, {"tolerance", kTol}};
  } else if (suite == "bh-structure") {
    std::optional<AntisymmetricUnitary> fixed;
    if (!u_file.empty()) fixed = AntisymmetricUnitary::make(io::read_matrix_file(u_file).matrix);
    double p1 = 0.0, remark1 = 0.0, orth = 0.0, p2 = -std::numeric_limits<double>::infinity();
    bool all = true;
    for (int t = 0; t < trials; ++t) {
      const AntisymmetricUnitary u = fixed ? *fixed : random_antisymmetric_unitary(dim, rng);
      const ComplexVector x = random_unit_vector(u.dim(), rng);
      const BhStructureReport r = verify_bh_structure(u, x);
      p1 = std::max(p1, r.p1_residual);
      remark1 = std::max(remark1, r.remark1_residual);
      orth = std::max(orth, r.orthogonality_residual);
      p2 = std::max(p2, r.p2_min_value);
      all = all && r.all_pass();
    }
    pass = all;
    result = Json{{"max_p1_residual", p1},
                  {"max_remark1_residual", remark1},
                  {"max_orthogonality_residual", orth},
                  {"max_p2_min_value", p2},
                  {"tolerances", Json{{"p1", 1e-11}, {"remark1", 1e-12}, {"orthogonality", 1e-12}}}};
  } else if (suite == "robertson-equality") {
    constexpr double kTol = 1e-12;
    const double diff =
        (robertson().choi() - breuer_hall(robertson_unitary()).choi()).cwiseAbs().maxCoeff();
    pass = diff <= kTol;
    result = Json{{"max_entry_difference", diff}, {"tolerance", kTol}};
  } else {
    throw Error(ErrorKind::kPreconditionViolated, "unknown suite '" + suite + "'");
  }
  doc["config"] = Json{{"suite", suite}, {"trials", trials}, {"dim", dim}};
  result["pass"] = pass;
  doc["result"] = std::move(result);
  emit(doc, out_path, out);
  return pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Positive maps, block-positivity certificates and exposedness of their rays"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::string out_path;

  MapOptions catalog_opts;
  auto* catalog = app.add_subcommand("catalog", "write the Choi matrix of a catalog map");
  add_map_options(catalog, catalog_opts);
  catalog->add_option("--seed", seed, "seed for randomly drawn parameters");
  catalog->add_option("--out", out_path, "output file (default stdout)");

  std::string check_file;
  std::string mode = "block-positive";
  SeeSawConfig check_cfg;
  int check_dim_in = 0;
  int check_dim_out = 0;
  auto* check = app.add_subcommand("check", "certify block-positivity, complete positivity or copositivity");
  check->add_option("choi_file", check_file, "Choi MatrixFile")->required();
  check->add_option("--mode", mode)->check(CLI::IsMember({"block-positive", "cp", "ccp"}));
  check->add_option("--seed", seed);
  check->add_option("--restarts", check_cfg.restarts)->check(CLI::PositiveNumber);
  check->add_option("--max-iters", check_cfg.max_iters)->check(CLI::PositiveNumber);
  check->add_option("--dim-in", check_dim_in);
  check->add_option("--dim-out", check_dim_out);
  check->add_option("--out", out_path);

  std::string state_file;
  std::string witness_file;
  auto* detect = app.add_subcommand("detect", "evaluate Tr(rho W) for a state and a witness");
  detect->add_option("state_file", state_file)->required();
  detect->add_option("witness_file", witness_file)->required();
  detect->add_option("--out", out_path);

  MapOptions exp_opts;
  ExposednessConfig exp_cfg;
  auto* exposed = app.add_subcommand("exposedness", "test whether the ray of a positive map is exposed");
  add_map_options(exposed, exp_opts);
  exposed->add_option("--samples", exp_cfg.sample_count, "dual-face pairs per batch (default 2 (nm)^2)");
  exposed->add_option("--budget", exp_cfg.budget, "cone-search candidates")->check(CLI::NonNegativeNumber);
  exposed->add_option("--seed", seed);
  exposed->add_option("--out", out_path);

  std::string suite;
  int trials = 100;
  int verify_dim = 4;
  std::string verify_u;
  auto* verify = app.add_subcommand("verify", "run a numerical identity suite");
  verify->add_option("--suite", suite)->required()->check(CLI::IsMember({"lemma1", "bh-structure", "robertson-equality"}));
  verify->add_option("--seed", seed);
  verify->add_option("--trials", trials);
  verify->add_option("--dim", verify_dim, "even dimension 2n");
  verify->add_option("--u", verify_u, "fixed antisymmetric unitary for bh-structure");
  verify->add_option("--out", out_path);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*catalog) return cmd_catalog(catalog_opts, seed, out_path, out);
    if (*check) return cmd_check(args, check_file, mode, seed, check_cfg, check_dim_in, check_dim_out, out_path, out);
    if (*detect) return cmd_detect(args, state_file, witness_file, out_path, out);
    if (*exposed) return cmd_exposedness(args, exp_opts, seed, exp_cfg, out_path, out);
    if (*verify) return cmd_verify(args, suite, seed, trials, verify_dim, verify_u, out_path, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::kNotPositiveMap && *exposed) return kExitNotPositive;
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

}  // namespace conewitness::cli
