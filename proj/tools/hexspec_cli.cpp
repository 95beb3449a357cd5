// Command line front end: spectra of star graphs and (dilated) hexagonal
// lattices with circulant time-reversal-breaking vertex couplings.
//
// Exit codes: 0 success, 2 invalid arguments, 3 numeric failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hexspec/coupling.hpp"
#include "hexspec/genhex.hpp"
#include "hexspec/hexband.hpp"
#include "hexspec/report_io.hpp"
#include "hexspec/star.hpp"

namespace {

using nlohmann::json;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << content;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(hexspec::sig15(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json cmatrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({hexspec::sig15(m(i, j).real()), hexspec::sig15(m(i, j).imag())});
    rows.push_back(row);
  }
  return rows;
}

struct CommonOutputs {
  std::string json_path, csv_path, svg_path;
};

void add_output_flags(CLI::App* cmd, CommonOutputs& out) {
  cmd->add_option("--json", out.json_path, "write the JSON report to this path");
  cmd->add_option("--csv", out.csv_path, "write the band table CSV to this path");
  cmd->add_option("--svg", out.svg_path, "write the band diagram SVG to this path");
}

void emit_report(const hexspec::SpectrumReport& rep, const CommonOutputs& out,
                 const std::string& svg) {
  const std::string text = hexspec::report_to_json_string(rep);
  std::cout << text;
  if (!out.json_path.empty()) write_file(out.json_path, text);
  if (!out.csv_path.empty()) write_file(out.csv_path, hexspec::report_to_csv(rep));
  if (!out.svg_path.empty()) write_file(out.svg_path, svg);
}

hexspec::ScanConfig scan_config_for(double max_len, std::optional<double> grid_step,
                                    std::optional<double> edge_tol) {
  hexspec::ScanConfig cfg = hexspec::default_scan_config(max_len);
  if (grid_step) cfg.grid_step = *grid_step;
  if (edge_tol) cfg.edge_tolerance = *edge_tol;
  return cfg;
}

int run(int argc, char** argv) {
  CLI::App app{"spectral toolkit for quantum graphs with the -R vertex coupling"};
  app.require_subcommand(1);

  // star
  auto* star = app.add_subcommand("star", "negative spectrum of the N-edge star graph");
  int star_degree = 0;
  double star_ell = 1.0;
  CommonOutputs star_out;
  star->add_option("--degree", star_degree, "vertex degree N")->required();
  star->add_option("--ell", star_ell, "vertex length scale");
  star->add_option("--json", star_out.json_path, "write the JSON report to this path");

  // smatrix
  auto* sm = app.add_subcommand("smatrix", "on-shell vertex S-matrix at momentum k");
  int sm_degree = 0;
  double sm_k = 0.0, sm_ell = 1.0;
  std::string sm_json;
  sm->add_option("--degree", sm_degree, "vertex degree N")->required();
  sm->add_option("--k", sm_k, "momentum, k > 0")->required();
  sm->add_option("--ell", sm_ell, "vertex length scale");
  sm->add_option("--json", sm_json, "write the JSON report to this path");

  // hex
  auto* hex = app.add_subcommand("hex", "band structure of the regular hexagonal lattice");
  double hex_length = 0.0, hex_kmax = 20.0, hex_kappamax = 3.0;
  std::string hex_coupling = "minus-r";
  std::optional<double> hex_grid, hex_tol;
  CommonOutputs hex_out;
  hex->add_option("--length", hex_length, "edge length l")->required();
  hex->add_option("--coupling", hex_coupling, "vertex coupling")
      ->check(CLI::IsMember({"minus-r", "r"}));
  hex->add_option("--kmax", hex_kmax, "positive-side momentum window");
  hex->add_option("--kappa-max", hex_kappamax, "negative-side momentum window");
  hex->add_option("--grid-step", hex_grid, "scan grid step override");
  hex->add_option("--edge-tol", hex_tol, "band edge bisection tolerance");
  add_output_flags(hex, hex_out);

  // genhex
  auto* gen = app.add_subcommand("genhex", "band structure of the dilated hexagonal lattice");
  std::vector<double> gen_lengths;
  double gen_kmax = 20.0, gen_kappamax = 3.0;
  std::optional<double> gen_grid, gen_tol;
  long long gen_maxden = 1000000;
  CommonOutputs gen_out;
  gen->add_option("--lengths", gen_lengths, "edge lengths a,b,c")
      ->required()
      ->delimiter(',')
      ->expected(3);
  gen->add_option("--kmax", gen_kmax, "positive-side momentum window");
  gen->add_option("--kappa-max", gen_kappamax, "negative-side momentum window");
  gen->add_option("--grid-step", gen_grid, "scan grid step override");
  gen->add_option("--edge-tol", gen_tol, "band edge bisection tolerance");
  gen->add_option("--max-den", gen_maxden, "max denominator for commensurability");
  add_output_flags(gen, gen_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  if (star->parsed()) {
    const auto spec = hexspec::star_bound_states(star_degree, star_ell);
    const auto limits = hexspec::s_matrix_limits(star_degree);
    json j;
    j["problem"] = {{"type", "star"}, {"degree", star_degree}, {"ell", hexspec::sig15(star_ell)}};
    json kappas = json::array(), energies = json::array();
    for (double k : spec.kappas) kappas.push_back(hexspec::sig15(k));
    for (double e : spec.energies) energies.push_back(hexspec::sig15(e));
    j["kappas"] = kappas;
    j["energies"] = energies;
    j["smatrix_limit_inf"] = matrix_to_json(limits.limit_inf);
    if (limits.zero_is_minus_identity)
      j["smatrix_limit_zero"] = "minus-identity";
    else
      j["smatrix_limit_zero"] = matrix_to_json(limits.limit_zero);
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!star_out.json_path.empty()) write_file(star_out.json_path, text);
    return 0;
  }

  if (sm->parsed()) {
    const auto coupling =
        hexspec::build_coupling(hexspec::CouplingKind::MinusR, sm_degree, sm_ell);
    const auto s = hexspec::s_matrix(coupling, sm_k);
    json j;
    j["problem"] = {{"type", "smatrix"}, {"degree", sm_degree}, {"ell", hexspec::sig15(sm_ell)}};
    j["k"] = hexspec::sig15(sm_k);
    j["entries"] = cmatrix_to_json(s.entries);
    j["unitarity_defect"] = hexspec::sig15(hexspec::unitarity_defect(s.entries));
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!sm_json.empty()) write_file(sm_json, text);
    return 0;
  }

  if (hex->parsed()) {
    hexspec::RegularHexProblem p{hex_length, hex_coupling == "minus-r"
                                                 ? hexspec::HexCoupling::MinusR
                                                 : hexspec::HexCoupling::R};
    const auto cfg = scan_config_for(hex_length, hex_grid, hex_tol);
    const auto rep = hexspec::compute_hex_spectrum(p, hex_kmax, hex_kappamax, cfg);
    const std::string svg = hex_out.svg_path.empty()
                                ? std::string()
                                : hexspec::render_hex_diagram_svg(p, rep, hex_kmax, hex_kappamax);
    emit_report(rep, hex_out, svg);
    return 0;
  }

  hexspec::GeneralHexProblem p{gen_lengths[0], gen_lengths[1], gen_lengths[2]};
  const double max_len = std::max({p.a, p.b, p.c});
  const auto cfg = scan_config_for(max_len, gen_grid, gen_tol);
  hexspec::CommensurabilityConfig ccfg;
  ccfg.max_denominator = gen_maxden;
  const auto rep = hexspec::compute_genhex_spectrum(p, gen_kmax, gen_kappamax, cfg, ccfg);
  const std::string svg =
      gen_out.svg_path.empty() ? std::string() : hexspec::render_bands_svg(rep);
  emit_report(rep, gen_out, svg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const hexspec::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
