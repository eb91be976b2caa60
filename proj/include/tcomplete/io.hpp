#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "tcomplete/admm.hpp"
#include "tcomplete/metrics.hpp"
#include "tcomplete/sampling.hpp"
#include "tcomplete/sweep.hpp"
#include "tcomplete/tensor3.hpp"

namespace tcomplete {

// T3B: "T3B1", three little-endian uint64 dims (n1, n2, n3), then n1*n2*n3
// little-endian IEEE-754 doubles in slice-major order (i fastest, then j, then k).

void write_t3b(std::ostream& out, const Tensor3d& t);
Tensor3d read_t3b(std::istream& in);
void save_t3b(const std::string& path, const Tensor3d& t);
Tensor3d load_t3b(const std::string& path);

// Mask text file: first line "n1 n2", then one 1-indexed "i j" pair per line.

void write_mask(std::ostream& out, const TubalMask& mask);
TubalMask read_mask(std::istream& in);
void save_mask(const std::string& path, const TubalMask& mask);
TubalMask load_mask(const std::string& path);

/// "%.17g", with nan/inf spelled out.
std::string format_double(double v);

/// `method,ratio,trial,re,psnr,time_s,iters`
void write_metric_header(std::ostream& out);
void write_metric_row(std::ostream& out, const MetricRow& row);

/// Keys of the rows already present in a metrics CSV (for resuming a sweep).
/// A missing file yields an empty set.
std::set<SweepKey> completed_rows(const std::string& path);

/// `iter,rel_change,re` with re blank when no ground truth was given.
void write_admm_history(std::ostream& out, const std::vector<AdmmRecord>& history);

/// `slice,iter,e`
void write_slice_history(std::ostream& out, const std::vector<std::vector<double>>& slice_errors);

} // namespace tcomplete
