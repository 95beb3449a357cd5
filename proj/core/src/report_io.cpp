#include "hexspec/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace hexspec {

namespace {

using nlohmann::json;

const char* side_name(Side s) { return s == Side::Positive ? "positive" : "negative"; }
const char* kind_name(BandKind k) { return k == BandKind::Ac ? "ac" : "flat"; }

Side side_from(const std::string& s) {
  if (s == "positive") return Side::Positive;
  if (s == "negative") return Side::Negative;
  throw std::invalid_argument("unknown side: " + s);
}

BandKind kind_from(const std::string& s) {
  if (s == "ac") return BandKind::Ac;
  if (s == "flat") return BandKind::Flat;
  throw std::invalid_argument("unknown band kind: " + s);
}

std::string fmt15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

}  // namespace

double sig15(double x) { return std::strtod(fmt15(x).c_str(), nullptr); }

json report_to_json(const SpectrumReport& rep) {
  json problem;
  problem["type"] = rep.problem.type;
  json params = json::object();
  for (const auto& [name, value] : rep.problem.params) params[name] = sig15(value);
  problem["params"] = params;
  problem["notes"] = rep.problem.notes;

  json bands = json::array();
  for (std::size_t i = 0; i < rep.ac_bands.size(); ++i) {
    const auto& b = rep.ac_bands[i];
    bands.push_back({{"index", i},
                     {"side", side_name(b.side)},
                     {"kind", kind_name(b.kind)},
                     {"k_lo", sig15(b.lo)},
                     {"k_hi", sig15(b.hi)},
                     {"E_lo", sig15(b.energy_lo)},
                     {"E_hi", sig15(b.energy_hi)}});
  }

  json gaps = json::array();
  for (const auto& g : rep.gaps)
    gaps.push_back({{"side", side_name(g.side)},
                    {"k_lo", sig15(g.lo)},
                    {"k_hi", sig15(g.hi)},
                    {"E_lo", sig15(g.energy_lo)},
                    {"E_hi", sig15(g.energy_hi)},
                    {"note", g.note}});

  json flats = json::array();
  for (double f : rep.flat_bands) flats.push_back(sig15(f));

  json diag{{"grid_step", sig15(rep.diagnostics.grid_step)},
            {"edge_tolerance", sig15(rep.diagnostics.edge_tolerance)},
            {"k_window", {sig15(rep.diagnostics.k_window_lo), sig15(rep.diagnostics.k_window_hi)}},
            {"kappa_window",
             {sig15(rep.diagnostics.kappa_window_lo), sig15(rep.diagnostics.kappa_window_hi)}}};

  return json{{"problem", problem},
              {"flat_bands", flats},
              {"bands", bands},
              {"gaps", gaps},
              {"measure_fraction", sig15(rep.measure_fraction)},
              {"diagnostics", diag}};
}

SpectrumReport report_from_json(const json& j) {
  SpectrumReport rep;
  rep.problem.type = j.at("problem").at("type").get<std::string>();
  for (auto it = j.at("problem").at("params").begin();
       it != j.at("problem").at("params").end(); ++it)
    rep.problem.params.emplace_back(it.key(), it.value().get<double>());
  rep.problem.notes = j.at("problem").at("notes").get<std::vector<std::string>>();

  rep.flat_bands = j.at("flat_bands").get<std::vector<double>>();

  for (const auto& jb : j.at("bands")) {
    BandInterval b;
    b.lo = jb.at("k_lo").get<double>();
    b.hi = jb.at("k_hi").get<double>();
    b.side = side_from(jb.at("side").get<std::string>());
    b.kind = kind_from(jb.at("kind").get<std::string>());
    b.energy_lo = jb.at("E_lo").get<double>();
    b.energy_hi = jb.at("E_hi").get<double>();
    rep.ac_bands.push_back(b);
  }
  for (const auto& jg : j.at("gaps")) {
    GapInterval g;
    g.lo = jg.at("k_lo").get<double>();
    g.hi = jg.at("k_hi").get<double>();
    g.side = side_from(jg.at("side").get<std::string>());
    g.energy_lo = jg.at("E_lo").get<double>();
    g.energy_hi = jg.at("E_hi").get<double>();
    g.note = jg.at("note").get<std::string>();
    rep.gaps.push_back(g);
  }
  rep.measure_fraction = j.at("measure_fraction").get<double>();
  const auto& d = j.at("diagnostics");
  rep.diagnostics.grid_step = d.at("grid_step").get<double>();
  rep.diagnostics.edge_tolerance = d.at("edge_tolerance").get<double>();
  rep.diagnostics.k_window_lo = d.at("k_window")[0].get<double>();
  rep.diagnostics.k_window_hi = d.at("k_window")[1].get<double>();
  rep.diagnostics.kappa_window_lo = d.at("kappa_window")[0].get<double>();
  rep.diagnostics.kappa_window_hi = d.at("kappa_window")[1].get<double>();
  return rep;
}

std::string report_to_json_string(const SpectrumReport& rep) {
  return report_to_json(rep).dump(2) + "\n";
}

std::string report_to_csv(const SpectrumReport& rep) {
  struct Row {
    double energy_lo;
    std::string text;
  };
  std::vector<Row> rows;
  std::size_t index = 0;
  auto add = [&](Side side, BandKind kind, double lo, double hi, double elo, double ehi) {
    std::ostringstream line;
    line << index++ << ',' << side_name(side) << ',' << kind_name(kind) << ','
         << fmt15(lo) << ',' << fmt15(hi) << ',' << fmt15(elo) << ',' << fmt15(ehi);
    rows.push_back({elo, line.str()});
  };

  std::vector<BandInterval> all = rep.ac_bands;
  for (double f : rep.flat_bands) all.push_back(make_band(f, f, Side::Positive, BandKind::Flat));
  std::sort(all.begin(), all.end(), [](const BandInterval& x, const BandInterval& y) {
    if (x.energy_lo != y.energy_lo) return x.energy_lo < y.energy_lo;
    return x.lo < y.lo;
  });

  for (const auto& b : all) add(b.side, b.kind, b.lo, b.hi, b.energy_lo, b.energy_hi);

  std::ostringstream out;
  out << "band_index,side,kind,k_lo,k_hi,E_lo,E_hi\n";
  for (const auto& r : rows) out << r.text << '\n';
  return out.str();
}

namespace {

struct Canvas {
  static constexpr double width = 960.0;
  static constexpr double height = 520.0;
  static constexpr double pad = 40.0;
  static constexpr double y_clip = 3.5;
  double x_lo, x_hi;  // momentum axis: [-kappa_max, k_max]

  double X(double v) const {
    return pad + (v - x_lo) / (x_hi - x_lo) * (width - 2 * pad);
  }
  double Y(double v) const {
    const double clamped = std::clamp(v, -y_clip, y_clip);
    return height / 2.0 - clamped * (height / 2.0 - pad) / y_clip;
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

// Polyline with segment breaks where the value leaves the clip window.
void emit_curve(std::ostringstream& out, const Canvas& cv,
                const std::function<double(double)>& fn, double lo, double hi, int n,
                const char* stroke, double stroke_width) {
  out << "<path fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
      << stroke_width << "\" d=\"";
  bool pen_down = false;
  for (int i = 0; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    const double v = fn(x);
    if (!std::isfinite(v) || std::abs(v) > 40.0) {
      pen_down = false;
      continue;
    }
    out << (pen_down ? 'L' : 'M') << num(cv.X(x)) << ' ' << num(cv.Y(v));
    pen_down = true;
  }
  out << "\"/>\n";
}

void emit_region(std::ostringstream& out, const Canvas& cv,
                 const std::function<double(double)>& upper,
                 const std::function<double(double)>& lower, double lo, double hi,
                 int n, const char* fill) {
  out << "<path fill=\"" << fill << "\" stroke=\"none\" d=\"";
  for (int i = 0; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    out << (i == 0 ? 'M' : 'L') << num(cv.X(x)) << ' ' << num(cv.Y(upper(x)));
  }
  for (int i = n; i >= 0; --i) {
    const double x = lo + (hi - lo) * i / n;
    out << 'L' << num(cv.X(x)) << ' ' << num(cv.Y(lower(x)));
  }
  out << "Z\"/>\n";
}

void emit_bands_on_axis(std::ostringstream& out, const Canvas& cv,
                        const SpectrumReport& rep) {
  for (const auto& b : rep.ac_bands) {
    const double sgn = (b.side == Side::Positive) ? 1.0 : -1.0;
    out << "<line x1=\"" << num(cv.X(sgn * b.lo)) << "\" y1=\"" << num(cv.Y(0.0))
        << "\" x2=\"" << num(cv.X(sgn * b.hi)) << "\" y2=\"" << num(cv.Y(0.0))
        << "\" stroke=\"#c62828\" stroke-width=\"6\"/>\n";
  }
  for (double f : rep.flat_bands)
    out << "<circle cx=\"" << num(cv.X(f)) << "\" cy=\"" << num(cv.Y(0.0))
        << "\" r=\"3.5\" fill=\"#1565c0\"/>\n";
}

std::string svg_open(const Canvas& cv) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cv.width
      << "\" height=\"" << cv.height << "\" viewBox=\"0 0 " << cv.width << ' '
      << cv.height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<line x1=\"" << num(cv.X(cv.x_lo)) << "\" y1=\"" << num(cv.Y(0.0))
      << "\" x2=\"" << num(cv.X(cv.x_hi)) << "\" y2=\"" << num(cv.Y(0.0))
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
      << "<line x1=\"" << num(cv.X(0.0)) << "\" y1=\"" << num(cv.pad) << "\" x2=\""
      << num(cv.X(0.0)) << "\" y2=\"" << num(cv.height - cv.pad)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  return out.str();
}

}  // namespace

std::string render_hex_diagram_svg(const RegularHexProblem& p,
                                   const SpectrumReport& rep, double k_max,
                                   double kappa_max) {
  Canvas cv{ .x_lo = -kappa_max, .x_hi = k_max };
  const auto env_pos = envelope_pair(p, Side::Positive);
  const auto env_neg = envelope_pair(p, Side::Negative);
  const double l = p.length;
  const int n = 800;

  auto pos_hi = [&](double k) { return std::max(env_pos.plus(k), env_pos.minus(k)); };
  auto pos_lo = [&](double k) { return std::min(env_pos.plus(k), env_pos.minus(k)); };
  auto neg_hi = [&](double x) { return std::max(env_neg.plus(-x), env_neg.minus(-x)); };
  auto neg_lo = [&](double x) { return std::min(env_neg.plus(-x), env_neg.minus(-x)); };

  std::ostringstream out;
  out << svg_open(cv);
  emit_region(out, cv, pos_hi, pos_lo, 1e-3, k_max, n, "#dbe9f6");
  emit_region(out, cv, neg_hi, neg_lo, -kappa_max, -1e-3, n, "#dbe9f6");
  emit_curve(out, cv, [&](double k) { return env_pos.plus(k); }, 1e-3, k_max, n, "#1565c0", 1.0);
  emit_curve(out, cv, [&](double k) { return env_pos.minus(k); }, 1e-3, k_max, n, "#2e7d32", 1.0);
  emit_curve(out, cv, [&](double x) { return env_neg.plus(-x); }, -kappa_max, -1e-3, n, "#1565c0", 1.0);
  emit_curve(out, cv, [&](double x) { return env_neg.minus(-x); }, -kappa_max, -1e-3, n, "#2e7d32", 1.0);
  emit_curve(out, cv, [&](double k) { return std::cos(2.0 * k * l); }, 1e-3, k_max, n, "#000000", 1.4);
  emit_curve(out, cv, [&](double x) { return std::cosh(2.0 * x * l); }, -kappa_max, -1e-3, n, "#000000", 1.4);
  emit_bands_on_axis(out, cv, rep);
  out << "</svg>\n";
  return out.str();
}

std::string render_bands_svg(const SpectrumReport& rep) {
  double k_hi = 1.0, kap_hi = 1.0;
  for (const auto& b : rep.ac_bands) {
    if (b.side == Side::Positive) k_hi = std::max(k_hi, b.hi);
    else kap_hi = std::max(kap_hi, b.hi);
  }
  for (double f : rep.flat_bands) k_hi = std::max(k_hi, f);
  Canvas cv{ .x_lo = -1.05 * kap_hi, .x_hi = 1.05 * k_hi };
  std::ostringstream out;
  out << svg_open(cv);
  emit_bands_on_axis(out, cv, rep);
  out << "</svg>\n";
  return out.str();
}

}  // namespace hexspec
