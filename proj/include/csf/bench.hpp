#pragma once

#include <string>
#include <vector>

#include "csf/feature_map.hpp"
#include "csf/scan.hpp"

namespace csf {

// One ladder cell: per-method median time for the full corner computation
// (fit both lines + line covariances + intersection + corner covariance) on
// n_points points per supporting span, and the resulting corner 1-sigma.
struct BenchRow {
  int n_points = 0;
  double t_wclm_us = 0.0, t_arras_us = 0.0, t_siadat_us = 0.0;
  double sx_wclm_mm = 0.0, sy_wclm_mm = 0.0;
  double sx_arras_mm = 0.0, sy_arras_mm = 0.0;
  double sx_siadat_mm = 0.0, sy_siadat_mm = 0.0;
};

// Environment/metadata block recorded atop the CSV so absolute microseconds
// are never compared across machines.
struct BenchMeta {
  int corner_id = -1;
  int reps = 0, warmup = 0;
  SegmentSpan span1{}, span2{};
  bool cpu_pinned = false;
  std::string compiler;
};

// Locates corner `corner_id` in the scan's feature map (corner ids follow
// sweep order), then for each ladder entry n subsamples n evenly-spaced
// points from each supporting span and measures each method's full corner
// computation: median of `reps` timed samples after 5 warm-up runs, batched
// so one sample spans enough cycles to be clock-resolvable. Subsampling is
// deterministic, so the sigma columns never vary across runs; only times do.
// Timed sections run single-threaded, pinned to one CPU when the platform
// allows. Requires reps >= 31 and every ladder entry <= both span sizes.
std::vector<BenchRow> run_corner_bench(const PolarScan& scan, int corner_id,
                                       const std::vector<int>& ladder, int reps,
                                       const RunConfig& config = {}, BenchMeta* meta = nullptr);

// Writes <out_prefix>.csv (columns exactly: n_points, t_wclm_us, t_arras_us,
// t_siadat_us, sx_wclm_mm, sy_wclm_mm, sx_arras_mm, sy_arras_mm,
// sx_siadat_mm, sy_siadat_mm; metadata as #-comments) and <out_prefix>.svg
// (uncertainty curves on the left axis, time ratios vs the inversion-point
// fit on the right axis).
void emit_bench_report(const std::vector<BenchRow>& rows, const std::string& out_prefix,
                       const BenchMeta& meta);

}  // namespace csf
