#include <doctest.h>

#include <sstream>

#include "hexspec/genhex.hpp"
#include "hexspec/report_io.hpp"

using namespace hexspec;

namespace {

SpectrumReport sample_report() {
  ScanConfig cfg = default_scan_config(1.0);
  return compute_hex_spectrum({1.0, HexCoupling::MinusR}, 8.0, 2.0, cfg);
}

}  // namespace

TEST_SUITE_BEGIN("report_io");

TEST_CASE("sig15 rounds to 15 significant digits") {
  CHECK(sig15(1.0 / 3.0) == 0.333333333333333);
  CHECK(sig15(2.0) == 2.0);
  CHECK(sig15(-1.2345678901234567e-7) == -1.23456789012346e-7);
}

TEST_CASE("json round trip is byte identical") {
  const auto rep = sample_report();
  const std::string first = report_to_json_string(rep);
  const auto parsed = report_from_json(nlohmann::json::parse(first));
  const std::string second = report_to_json_string(parsed);
  CHECK(first == second);
  CHECK(first.find("\"problem\"") != std::string::npos);
  CHECK(first.find("\"measure_fraction\"") != std::string::npos);
}

TEST_CASE("csv column contract") {
  const auto rep = sample_report();
  const std::string csv = report_to_csv(rep);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "band_index,side,kind,k_lo,k_hi,E_lo,E_hi");
  std::size_t rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
  }
  CHECK(rows == rep.ac_bands.size() + rep.flat_bands.size());
  // rows are sorted by lower energy: the negative band comes first
  std::istringstream again(csv);
  std::getline(again, header);
  std::getline(again, line);
  CHECK(line.find("negative") != std::string::npos);
}

TEST_CASE("svg output is deterministic and well formed") {
  const auto rep = sample_report();
  const RegularHexProblem p{1.0, HexCoupling::MinusR};
  const std::string a = render_hex_diagram_svg(p, rep, 8.0, 2.0);
  const std::string b = render_hex_diagram_svg(p, rep, 8.0, 2.0);
  CHECK(a == b);
  CHECK(a.rfind("<svg", 0) == 0);
  CHECK(a.find("</svg>") != std::string::npos);
  CHECK(a.find("<path") != std::string::npos);

  const std::string bands = render_bands_svg(rep);
  CHECK(bands.rfind("<svg", 0) == 0);
  CHECK(bands.find("</svg>") != std::string::npos);
}

TEST_SUITE_END();
