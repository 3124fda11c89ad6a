#include "csf/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#ifdef __linux__
#include <pthread.h>
#include <sched.h>
#endif

#include "csf/corners.hpp"
#include "csf/errors.hpp"
#include "csf/fit_input.hpp"
#include "csf/format.hpp"

namespace csf {

namespace {

bool pin_to_current_cpu() {
#ifdef __linux__
  const int cpu = sched_getcpu();
  if (cpu < 0) return false;
  cpu_set_t set;
  CPU_ZERO(&set);
  CPU_SET(cpu, &set);
  return pthread_setaffinity_np(pthread_self(), sizeof(set), &set) == 0;
#else
  return false;
#endif
}

std::vector<PolarPoint> subsample(const std::vector<PolarPoint>& points, const SegmentSpan& span,
                                  int n) {
  // Evenly spaced over the span, both ends included; strides >= 1 keep the
  // rounded indices distinct.
  std::vector<PolarPoint> out;
  out.reserve(n);
  const int m = span.count();
  for (int k = 0; k < n; ++k) {
    const long idx = n == 1 ? (m - 1) / 2 : std::lround(double(k) * (m - 1) / (n - 1));
    out.push_back(points[span.start + idx]);
  }
  return out;
}

constexpr int kWarmup = 5;
constexpr double kMinSampleUs = 100.0;  // batch runs until one sample spans this

double elapsed_us(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
}

// One candidate operation, batched so each timed sample spans enough wall
// time for the clock to resolve it cleanly.
struct TimedCell {
  std::function<void()> once;
  long batch = 1;
  std::vector<double> samples;
};

void calibrate(TimedCell& cell) {
  for (;;) {
    const auto t0 = std::chrono::steady_clock::now();
    for (long k = 0; k < cell.batch; ++k) cell.once();
    if (elapsed_us(t0) >= kMinSampleUs || cell.batch >= (1L << 20)) return;
    cell.batch *= 2;
  }
}

double one_sample(TimedCell& cell) {
  const auto t0 = std::chrono::steady_clock::now();
  for (long k = 0; k < cell.batch; ++k) cell.once();
  return elapsed_us(t0) / double(cell.batch);
}

// Median wall time per call for each of the three cells. Cells are sampled
// round-robin so slow drift in effective clock speed lands on all of them
// alike; that keeps cross-method ratios stable even when absolute times
// wander between rows.
std::array<double, 3> median_times_us(std::array<TimedCell, 3>& cells, int reps) {
  for (TimedCell& c : cells) calibrate(c);
  for (int i = 0; i < kWarmup; ++i)
    for (TimedCell& c : cells) (void)one_sample(c);
  for (TimedCell& c : cells) {
    c.samples.clear();
    c.samples.reserve(reps);
  }
  for (int r = 0; r < reps; ++r)
    for (TimedCell& c : cells) c.samples.push_back(one_sample(c));
  std::array<double, 3> med{};
  for (int i = 0; i < 3; ++i) {
    std::vector<double>& s = cells[i].samples;
    std::nth_element(s.begin(), s.begin() + reps / 2, s.end());
    med[i] = s[reps / 2];
  }
  return med;
}

}  // namespace

std::vector<BenchRow> run_corner_bench(const PolarScan& scan, int corner_id,
                                       const std::vector<int>& ladder, int reps,
                                       const RunConfig& config, BenchMeta* meta) {
  if (reps < 31) throw validation_error("reps must be >= 31 for a stable median");
  if (ladder.empty()) throw validation_error("ladder is empty");
  for (int n : ladder)
    if (n < 2) throw validation_error("ladder entries must be >= 2 points");

  PolarScan working = scan;
  if (config.noise_override) working.noise = *config.noise_override;

  const FeatureMap map = extract_feature_map(working, Method::wclm, config);
  if (corner_id < 0 || corner_id >= static_cast<int>(map.corners.size()))
    throw validation_error("corner id " + std::to_string(corner_id) + " not in [0, " +
                           std::to_string(map.corners.size()) + ")");
  const CornerFeature& target = map.corners[corner_id];
  const SegmentSpan s1 = map.lines[target.line1].span();
  const SegmentSpan s2 = map.lines[target.line2].span();
  for (int n : ladder)
    if (n > s1.count() || n > s2.count())
      throw validation_error("ladder entry " + std::to_string(n) +
                             " exceeds the supporting spans (" + std::to_string(s1.count()) +
                             " and " + std::to_string(s2.count()) + " points)");

  const bool pinned = pin_to_current_cpu();
  if (meta) {
    meta->corner_id = corner_id;
    meta->reps = reps;
    meta->warmup = kWarmup;
    meta->span1 = s1;
    meta->span2 = s2;
    meta->cpu_pinned = pinned;
    meta->compiler = __VERSION__;
  }

  // Spin briefly so the CPU frequency governor settles before the first row.
  {
    const auto until = std::chrono::steady_clock::now() + std::chrono::milliseconds(150);
    volatile double spin = 1.0;
    while (std::chrono::steady_clock::now() < until) spin = spin * 1.0000001 + 1e-12;
  }

  std::vector<BenchRow> rows;
  rows.reserve(ladder.size());
  double sink = 0.0;

  for (int n : ladder) {
    BenchRow row;
    row.n_points = n;
    const FitInput in1 = make_fit_input(subsample(working.points, s1, n), working.noise,
                                        config.weights);
    const FitInput in2 = make_fit_input(subsample(working.points, s2, n), working.noise,
                                        config.weights);

    auto wclm_once = [&] {
      InversionPointLine l1 = fit_line_wclm(in1), l2 = fit_line_wclm(in2);
      l1.cov = wclm_line_covariance(l1, in1);
      l2.cov = wclm_line_covariance(l2, in2);
      const CornerFeature c = corner_wclm(l1, l2);
      sink += c.x + corner_wclm_covariance(c, l1, l2)(0, 0);
    };
    auto arras_once = [&] {
      PolarLine l1 = fit_line_arras(in1, config.arras_mode),
                l2 = fit_line_arras(in2, config.arras_mode);
      l1.cov = arras_line_covariance(l1, in1, config.arras_mode);
      l2.cov = arras_line_covariance(l2, in2, config.arras_mode);
      const CornerFeature c = corner_arras(l1, l2);
      sink += c.x + corner_arras_covariance(c, l1, l2)(0, 0);
    };
    auto siadat_once = [&] {
      ImplicitLine l1 = fit_line_siadat(in1), l2 = fit_line_siadat(in2);
      l1.cov = siadat_line_covariance(l1, in1);
      l2.cov = siadat_line_covariance(l2, in2);
      const CornerFeature c = corner_siadat(l1, l2);
      sink += c.x + corner_siadat_covariance(c, l1, l2)(0, 0);
    };

    std::array<TimedCell, 3> cells{TimedCell{wclm_once}, TimedCell{arras_once},
                                   TimedCell{siadat_once}};
    const std::array<double, 3> med = median_times_us(cells, reps);
    row.t_wclm_us = med[0];
    row.t_arras_us = med[1];
    row.t_siadat_us = med[2];

    {
      InversionPointLine l1 = fit_line_wclm(in1), l2 = fit_line_wclm(in2);
      l1.cov = wclm_line_covariance(l1, in1);
      l2.cov = wclm_line_covariance(l2, in2);
      const CornerFeature c = corner_wclm(l1, l2);
      const Eigen::Matrix2d cc = corner_wclm_covariance(c, l1, l2);
      row.sx_wclm_mm = std::sqrt(std::max(0.0, cc(0, 0))) * 1e3;
      row.sy_wclm_mm = std::sqrt(std::max(0.0, cc(1, 1))) * 1e3;
    }
    {
      PolarLine l1 = fit_line_arras(in1, config.arras_mode),
                l2 = fit_line_arras(in2, config.arras_mode);
      l1.cov = arras_line_covariance(l1, in1, config.arras_mode);
      l2.cov = arras_line_covariance(l2, in2, config.arras_mode);
      const CornerFeature c = corner_arras(l1, l2);
      const Eigen::Matrix2d cc = corner_arras_covariance(c, l1, l2);
      row.sx_arras_mm = std::sqrt(std::max(0.0, cc(0, 0))) * 1e3;
      row.sy_arras_mm = std::sqrt(std::max(0.0, cc(1, 1))) * 1e3;
    }
    {
      ImplicitLine l1 = fit_line_siadat(in1), l2 = fit_line_siadat(in2);
      l1.cov = siadat_line_covariance(l1, in1);
      l2.cov = siadat_line_covariance(l2, in2);
      const CornerFeature c = corner_siadat(l1, l2);
      const Eigen::Matrix2d cc = corner_siadat_covariance(c, l1, l2);
      row.sx_siadat_mm = std::sqrt(std::max(0.0, cc(0, 0))) * 1e3;
      row.sy_siadat_mm = std::sqrt(std::max(0.0, cc(1, 1))) * 1e3;
    }
    rows.push_back(row);
  }
  if (!std::isfinite(sink)) throw geometry_error("benchmark produced non-finite results");
  return rows;
}

namespace {

struct Series {
  const char* cls;
  const char* color;
  bool dashed;
  std::vector<double> values;
};

void write_curves_svg(std::ostream& os, const std::vector<BenchRow>& rows) {
  const double W = 860, H = 520, L = 70, R = 790, T = 40, B = 450;  // plot box corners
  double n_min = rows.front().n_points, n_max = rows.front().n_points;
  for (const BenchRow& r : rows) {
    n_min = std::min(n_min, double(r.n_points));
    n_max = std::max(n_max, double(r.n_points));
  }

  std::vector<Series> sigma = {
      {"sig-wclm-x", "#1f77b4", false, {}},  {"sig-wclm-y", "#1f77b4", true, {}},
      {"sig-arras-x", "#2ca02c", false, {}}, {"sig-arras-y", "#2ca02c", true, {}},
      {"sig-siadat-x", "#d62728", false, {}}, {"sig-siadat-y", "#d62728", true, {}},
  };
  std::vector<Series> ratio = {
      {"ratio-arras", "#9467bd", false, {}},
      {"ratio-siadat", "#8c564b", false, {}},
  };
  for (const BenchRow& r : rows) {
    sigma[0].values.push_back(r.sx_wclm_mm);
    sigma[1].values.push_back(r.sy_wclm_mm);
    sigma[2].values.push_back(r.sx_arras_mm);
    sigma[3].values.push_back(r.sy_arras_mm);
    sigma[4].values.push_back(r.sx_siadat_mm);
    sigma[5].values.push_back(r.sy_siadat_mm);
    ratio[0].values.push_back(r.t_wclm_us > 0 ? r.t_arras_us / r.t_wclm_us : 0.0);
    ratio[1].values.push_back(r.t_wclm_us > 0 ? r.t_siadat_us / r.t_wclm_us : 0.0);
  }
  double sig_max = 0.0, ratio_max = 0.0;
  for (const Series& s : sigma)
    for (double v : s.values) sig_max = std::max(sig_max, v);
  for (const Series& s : ratio)
    for (double v : s.values) ratio_max = std::max(ratio_max, v);
  const double sig_top = sig_max > 0 ? sig_max * 1.1 : 1.0;
  const double ratio_top = ratio_max > 0 ? ratio_max * 1.1 : 1.0;

  auto X = [&](double n) {
    return n_max > n_min ? L + (n - n_min) / (n_max - n_min) * (R - L) : (L + R) / 2;
  };
  auto Y_sig = [&](double v) { return B - v / sig_top * (B - T); };
  auto Y_ratio = [&](double v) { return B - v / ratio_top * (B - T); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(W, 0) << "\" height=\""
     << fixed(H, 0) << "\" viewBox=\"0 0 " << fixed(W, 0) << ' ' << fixed(H, 0) << "\">\n";
  os << "<style>.axis{stroke:#333;stroke-width:1;}.tick{font:12px sans-serif;fill:#333;}"
        ".label{font:13px sans-serif;fill:#333;}</style>\n";
  os << "<rect width=\"" << fixed(W, 0) << "\" height=\"" << fixed(H, 0)
     << "\" fill=\"#ffffff\"/>\n";

  os << "<line class=\"axis\" x1=\"" << fixed(L, 1) << "\" y1=\"" << fixed(B, 1) << "\" x2=\""
     << fixed(R, 1) << "\" y2=\"" << fixed(B, 1) << "\"/>\n";
  os << "<line class=\"axis\" x1=\"" << fixed(L, 1) << "\" y1=\"" << fixed(T, 1) << "\" x2=\""
     << fixed(L, 1) << "\" y2=\"" << fixed(B, 1) << "\"/>\n";
  os << "<line class=\"axis\" x1=\"" << fixed(R, 1) << "\" y1=\"" << fixed(T, 1) << "\" x2=\""
     << fixed(R, 1) << "\" y2=\"" << fixed(B, 1) << "\"/>\n";

  for (int t = 0; t <= 4; ++t) {
    const double f = t / 4.0;
    const double y = B - f * (B - T);
    os << "<text class=\"tick\" x=\"" << fixed(L - 8, 1) << "\" y=\"" << fixed(y + 4, 1)
       << "\" text-anchor=\"end\">" << fixed(f * sig_top, 1) << "</text>\n";
    os << "<text class=\"tick\" x=\"" << fixed(R + 8, 1) << "\" y=\"" << fixed(y + 4, 1)
       << "\">" << fixed(f * ratio_top, 1) << "</text>\n";
    const double n = n_min + f * (n_max - n_min);
    os << "<text class=\"tick\" x=\"" << fixed(X(n), 1) << "\" y=\"" << fixed(B + 18, 1)
       << "\" text-anchor=\"middle\">" << fixed(n, 0) << "</text>\n";
  }
  os << "<text class=\"label\" x=\"" << fixed((L + R) / 2, 1) << "\" y=\"" << fixed(B + 40, 1)
     << "\" text-anchor=\"middle\">points per span</text>\n";
  os << "<text class=\"label\" x=\"16\" y=\"" << fixed((T + B) / 2, 1)
     << "\" transform=\"rotate(-90 16 " << fixed((T + B) / 2, 1)
     << ")\" text-anchor=\"middle\">corner 1-sigma (mm)</text>\n";
  os << "<text class=\"label\" x=\"" << fixed(W - 16, 1) << "\" y=\"" << fixed((T + B) / 2, 1)
     << "\" transform=\"rotate(90 " << fixed(W - 16, 1) << ' ' << fixed((T + B) / 2, 1)
     << ")\" text-anchor=\"middle\">time ratio vs inversion-point fit</text>\n";

  auto polyline = [&](const Series& s, auto yfn) {
    os << "<polyline class=\"" << s.cls << "\" fill=\"none\" stroke=\"" << s.color
       << "\" stroke-width=\"2\"";
    if (s.dashed) os << " stroke-dasharray=\"6 4\"";
    os << " points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i) os << ' ';
      os << fixed(X(rows[i].n_points), 2) << ',' << fixed(yfn(s.values[i]), 2);
    }
    os << "\"/>\n";
  };
  for (const Series& s : sigma) polyline(s, Y_sig);
  for (const Series& s : ratio) polyline(s, Y_ratio);

  const char* legend[] = {
      "solid/dashed: sigma_x / sigma_y; blue: inversion-point, green: polar, red: implicit",
      "purple: polar/inversion time ratio; brown: implicit/inversion time ratio (right axis)",
  };
  os << "<text class=\"label\" x=\"" << fixed(L, 1) << "\" y=\"18\">" << legend[0]
     << "</text>\n";
  os << "<text class=\"label\" x=\"" << fixed(L, 1) << "\" y=\"34\">" << legend[1]
     << "</text>\n";
  os << "</svg>\n";
}

}  // namespace

void emit_bench_report(const std::vector<BenchRow>& rows, const std::string& out_prefix,
                       const BenchMeta& meta) {
  if (rows.empty()) throw validation_error("no benchmark rows to report");

  std::ostringstream csv;
  csv << "# corner micro-benchmark: median of " << meta.reps << " timed samples after "
      << meta.warmup << " warm-up runs per cell\n";
  csv << "# compiler: " << meta.compiler << "\n";
  csv << "# corner " << meta.corner_id << ": spans [" << meta.span1.start << ".."
      << meta.span1.end << "] (" << meta.span1.count() << " pts) and [" << meta.span2.start
      << ".." << meta.span2.end << "] (" << meta.span2.count() << " pts)\n";
  csv << "# cpu_pinned: " << (meta.cpu_pinned ? "yes" : "no") << "\n";
  csv << "# times vary with the machine; sigma columns are deterministic given the scan\n";
  csv << "n_points,t_wclm_us,t_arras_us,t_siadat_us,sx_wclm_mm,sy_wclm_mm,sx_arras_mm,"
         "sy_arras_mm,sx_siadat_mm,sy_siadat_mm\n";
  for (const BenchRow& r : rows) {
    csv << r.n_points << ',' << fixed(r.t_wclm_us, 4) << ',' << fixed(r.t_arras_us, 4) << ','
        << fixed(r.t_siadat_us, 4) << ',' << g17(r.sx_wclm_mm) << ',' << g17(r.sy_wclm_mm)
        << ',' << g17(r.sx_arras_mm) << ',' << g17(r.sy_arras_mm) << ',' << g17(r.sx_siadat_mm)
        << ',' << g17(r.sy_siadat_mm) << '\n';
  }

  std::ofstream csv_file(out_prefix + ".csv", std::ios::binary);
  if (!csv_file) throw io_error("cannot open for writing: " + out_prefix + ".csv");
  csv_file << csv.str();
  if (!csv_file.flush()) throw io_error("write failed: " + out_prefix + ".csv");

  std::ostringstream svg;
  write_curves_svg(svg, rows);
  std::ofstream svg_file(out_prefix + ".svg", std::ios::binary);
  if (!svg_file) throw io_error("cannot open for writing: " + out_prefix + ".svg");
  svg_file << svg.str();
  if (!svg_file.flush()) throw io_error("write failed: " + out_prefix + ".svg");
}

}  // namespace csf
