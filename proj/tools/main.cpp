// Command line front end: every subcommand reads/writes structured JSON and
// is reproducible bit-for-bit. Exit codes: 0 success, 1 runtime failure,
// 2 parse/usage error, 3 cap exceeded, 4 acceptance criteria failed.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "mellip/covering.hpp"
#include "mellip/ell_solver.hpp"
#include "mellip/io.hpp"
#include "mellip/svp.hpp"
#include "mellip/verify.hpp"

namespace {

using namespace mellip;

struct CommonOptions {
  std::string output_path;
  int threads = 1;  // accepted for interface stability; results never depend on it
};

void emit(const Json& j, const CommonOptions& common) {
  if (common.output_path.empty()) {
    std::cout << j.dump(2) << std::endl;
    return;
  }
  std::ofstream out(common.output_path);
  if (!out) throw error(errc::invalid_input, "cannot open output file " + common.output_path);
  out << j.dump(2) << std::endl;
}

GridMode parse_mode(const std::string& mode) {
  if (mode == "cell_cover") return GridMode::cell_cover;
  if (mode == "ball3") return GridMode::ball3_set;
  throw error(errc::parse_error, "unknown grid mode '" + mode + "' (cell_cover|ball3)");
}

Json solve_to_json(const SolveResult& res, int dim) {
  Json j;
  j["status"] = to_string(res.status);
  j["value"] = res.value;
  j["iterations"] = res.iterations;
  j["certified_gap"] = res.certified_gap;
  j["A"] = matrix_to_json(res.A_opt.entries)["entries"];
  j["ellipsoid"] = ellipsoid_to_json(build_ellipsoid(res.A_opt, res.value, dim));
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"approximate M-ellipsoids and shortest lattice vectors in general norms"};
  app.require_subcommand(1);
  CommonOptions common;
  app.add_option("--output,-o", common.output_path, "write the JSON result to a file");
  app.add_option("--threads", common.threads,
                 "evaluation thread hint; never changes any output bit");

  // grid
  auto* grid_cmd = app.add_subcommand("grid", "enumerate the Gaussian grid D");
  int grid_dim = 2;
  std::string grid_mode = "cell_cover";
  int dim_cap = 10;
  bool grid_dump = false;
  grid_cmd->add_option("--dim,-n", grid_dim, "dimension")->required();
  grid_cmd->add_option("--mode", grid_mode, "cell_cover|ball3");
  grid_cmd->add_option("--dim-cap", dim_cap, "refuse dimensions above this cap");
  grid_cmd->add_flag("--dump", grid_dump, "also print one 'z... weight' record per point");

  // l-estimate
  auto* lest_cmd = app.add_subcommand("l-estimate", "discrete ell-estimate of a body");
  std::string lest_body, lest_matrix, lest_mode = "cell_cover";
  lest_cmd->add_option("--body", lest_body, "body JSON file")->required();
  lest_cmd->add_option("--matrix", lest_matrix, "optional shape matrix JSON file");
  lest_cmd->add_option("--mode", lest_mode, "cell_cover|ball3");

  // ell-solve
  auto* solve_cmd = app.add_subcommand("ell-solve", "solve the ellipsoid program");
  std::string solve_body, solve_mode = "cell_cover";
  double solve_eps = 0.1;
  int solve_iters = 200000;
  bool solve_raw = false;
  solve_cmd->add_option("--body", solve_body, "body JSON file")->required();
  solve_cmd->add_option("--epsilon,-e", solve_eps, "multiplicative accuracy in (0,1]");
  solve_cmd->add_option("--max-iterations", solve_iters, "cutting plane iteration cap");
  solve_cmd->add_option("--mode", solve_mode, "cell_cover|ball3");
  solve_cmd->add_flag("--no-normalize", solve_raw,
                      "body is already in the normalized position");

  // diag-covering
  auto* diag_cmd = app.add_subcommand("diag-covering", "volume-ratio covering bounds");
  std::string diag_body, diag_ellipsoid, diag_method = "quasi_mc";
  std::int64_t diag_resolution = 200000;
  diag_cmd->add_option("--body", diag_body, "body JSON file")->required();
  diag_cmd->add_option("--ellipsoid", diag_ellipsoid, "ellipsoid JSON file")->required();
  diag_cmd->add_option("--method", diag_method, "grid|quasi_mc");
  diag_cmd->add_option("--resolution", diag_resolution,
                       "points per axis (grid) or total points (quasi_mc)");

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "lattice points in an ellipsoid");
  std::string enum_basis, enum_ellipsoid;
  std::vector<double> enum_center;
  std::int64_t node_cap = 100000000;
  enum_cmd->add_option("--basis", enum_basis, "lattice JSON file")->required();
  enum_cmd->add_option("--ellipsoid", enum_ellipsoid, "ellipsoid JSON file")->required();
  enum_cmd->add_option("--center", enum_center, "center coordinates (default origin)");
  enum_cmd->add_option("--node-cap", node_cap, "search node cap");

  // svp-l2
  auto* svp2_cmd = app.add_subcommand("svp-l2", "shortest vector in the Euclidean norm");
  std::string svp2_basis;
  svp2_cmd->add_option("--basis", svp2_basis, "lattice JSON file")->required();

  // svp
  auto* svp_cmd = app.add_subcommand("svp", "shortest vector in the body's norm");
  std::string svp_basis, svp_body, svp_mode = "cell_cover";
  bool svp_fallback = false;
  double svp_eps = 1.0;
  std::int64_t svp_node_cap = 100000000, svp_translate_cap = 10000000;
  svp_cmd->add_option("--basis", svp_basis, "lattice JSON file")->required();
  svp_cmd->add_option("--body", svp_body, "body JSON file")->required();
  svp_cmd->add_flag("--fallback-ball", svp_fallback,
                    "enumerate one sandwich ball instead of the covering");
  svp_cmd->add_option("--solver-epsilon", svp_eps, "internal program accuracy");
  svp_cmd->add_option("--mode", svp_mode, "cell_cover|ball3");
  svp_cmd->add_option("--node-cap", svp_node_cap, "per-enumeration node cap");
  svp_cmd->add_option("--translate-cap", svp_translate_cap, "covering translate cap");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance criteria");
  bool verify_quick = false;
  std::vector<int> verify_criteria;
  verify_cmd->add_flag("--quick", verify_quick, "reduced sample counts, same tolerances");
  verify_cmd->add_option("--criteria", verify_criteria, "subset of criteria ids (1..10)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help and --version exit cleanly
  }

  if (grid_cmd->parsed()) {
    const GridParams params = GridParams::make(grid_dim, parse_mode(grid_mode));
    const GaussGrid grid = GaussGrid::build(params, dim_cap);
    Json j;
    j["n"] = grid_dim;
    j["s"] = params.s;
    j["mode"] = to_string(params.mode);
    j["point_count"] = grid.size();
    j["weight_sum"] = grid.weight_sum();
    emit(j, common);
    if (grid_dump) {
      std::cout.precision(17);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        for (int k = 0; k < grid_dim; ++k) std::cout << grid.points()[i][k] << ' ';
        std::cout << grid.weights()[i] << '\n';
      }
    }
    return 0;
  }

  if (lest_cmd->parsed()) {
    const Body body = body_from_json(load_json_file(lest_body));
    const GridParams params = GridParams::make(body.dim(), parse_mode(lest_mode));
    const GaussGrid grid = GaussGrid::build(params);
    Json j;
    j["n"] = body.dim();
    j["s"] = params.s;
    j["mode"] = to_string(params.mode);
    j["point_count"] = grid.size();
    if (lest_matrix.empty()) {
      j["l_tilde"] = l_tilde(body, grid);
    } else {
      const Mat a = matrix_from_json(load_json_file(lest_matrix));
      j["f_tilde"] = f_tilde(body, grid, a);
    }
    emit(j, common);
    return 0;
  }

  if (solve_cmd->parsed()) {
    Body body = body_from_json(load_json_file(solve_body));
    Json j;
    if (!solve_raw) {
      const NormalizedBody pos = body.normalize();
      j["normalization"] = matrix_to_json(pos.transform)["entries"];
      body = pos.body;
    }
    SolverConfig cfg;
    cfg.epsilon = solve_eps;
    cfg.max_iterations = solve_iters;
    cfg.grid_mode = parse_mode(solve_mode);
    const GaussGrid grid = GaussGrid::build(GridParams::make(body.dim(), cfg.grid_mode));
    const SolveResult res = solve_ell_program(body, grid, cfg);
    Json out = solve_to_json(res, body.dim());
    if (j.contains("normalization")) out["normalization"] = j["normalization"];
    emit(out, common);
    return 0;
  }

  if (diag_cmd->parsed()) {
    const Body body = body_from_json(load_json_file(diag_body));
    const Ellipsoid e = ellipsoid_from_json(load_json_file(diag_ellipsoid));
    const VolumeMethod method = diag_method == "grid" ? VolumeMethod::grid_2d_3d
                                                      : VolumeMethod::quasi_mc;
    const CoveringReport rep = volume_ratio_diag(body, e, method, diag_resolution);
    Json j;
    j["vol_E"] = rep.vol_E;
    j["vol_K_est"] = rep.vol_K_est;
    j["vol_intersection_est"] = rep.vol_intersection_est;
    j["bound_N_K_E"] = rep.bound_N_K_E;
    j["bound_N_E_K"] = rep.bound_N_E_K;
    j["method"] = to_string(rep.method);
    j["points_used"] = rep.points_used;
    emit(j, common);
    return 0;
  }

  if (enum_cmd->parsed()) {
    const LatticeBasis basis = lattice_from_json(load_json_file(enum_basis));
    const Ellipsoid e = ellipsoid_from_json(load_json_file(enum_ellipsoid));
    Vec center = Vec::Zero(basis.dim());
    if (!enum_center.empty()) {
      if (static_cast<int>(enum_center.size()) != basis.dim())
        throw error(errc::parse_error, "--center length differs from the basis dimension");
      for (int i = 0; i < basis.dim(); ++i) center[i] = enum_center[i];
    }
    const EnumerationResult res = enumerate_in_ellipsoid(basis, center, e, node_cap);
    Json j;
    j["count"] = res.points.size();
    j["nodes_visited"] = res.nodes_visited;
    Json pts = Json::array();
    for (const Vec& p : res.points) pts.push_back(vector_to_json(p));
    j["points"] = pts;
    emit(j, common);
    return 0;
  }

  if (svp2_cmd->parsed()) {
    const LatticeBasis basis = lattice_from_json(load_json_file(svp2_basis));
    const ShortestVectorResult res = shortest_vector_l2(basis);
    Json j;
    j["vector"] = vector_to_json(res.vector);
    Json coeffs = Json::array();
    for (int i = 0; i < res.coefficients.size(); ++i) coeffs.push_back(res.coefficients[i]);
    j["coefficients"] = coeffs;
    j["norm"] = res.norm;
    emit(j, common);
    return 0;
  }

  if (svp_cmd->parsed()) {
    const LatticeBasis basis = lattice_from_json(load_json_file(svp_basis));
    const Body body = body_from_json(load_json_file(svp_body));
    SvpConfig cfg;
    cfg.fallback_ball = svp_fallback;
    cfg.solver_epsilon = svp_eps;
    cfg.grid_mode = parse_mode(svp_mode);
    cfg.caps.node_cap = svp_node_cap;
    cfg.caps.translate_cap = svp_translate_cap;
    const SvpResult res = svp(basis, body, cfg);
    Json j;
    j["vector"] = vector_to_json(res.vector);
    Json coeffs = Json::array();
    for (int i = 0; i < res.coefficients.size(); ++i) coeffs.push_back(res.coefficients[i]);
    j["coefficients"] = coeffs;
    j["norm_value"] = res.norm_value;
    j["scale_used"] = res.scale_used;
    j["translates_enumerated"] = res.translates_enumerated;
    j["points_examined"] = res.points_examined;
    j["path"] = res.used_fallback ? "fallback_ball" : "covering";
    emit(j, common);
    return 0;
  }

  if (verify_cmd->parsed()) {
    AcceptanceOptions options;
    options.quick = verify_quick;
    options.criteria = verify_criteria;
    const auto results = run_acceptance(options, &std::cout);
    int failed = 0;
    for (const auto& r : results) failed += !r.passed;
    std::cout << (failed == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << " ("
              << results.size() - failed << "/" << results.size() << ")" << std::endl;
    return failed == 0 ? 0 : 4;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const mellip::error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    switch (e.code()) {
      case mellip::errc::parse_error:
        return 2;
      case mellip::errc::cap_exceeded:
        return 3;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}
