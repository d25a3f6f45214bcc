#pragma once

#include <ostream>
#include <string>

#include "folner/diagnostics.hpp"
#include "folner/json_io.hpp"
#include "folner/spectral.hpp"
#include "folner/szego.hpp"
#include "folner/tensor.hpp"
#include "folner/traces.hpp"

namespace folner {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

/// Sorts rows by (label, n, p) / (label, n) so output is schedule independent.
void sort_rows(FolnerReport& r);
void sort_rows(TraceReport& r);
void sort_rows(SzegoReport& r);

Json to_json(const FolnerReport& r);
Json to_json(const TraceReport& r);
Json to_json(const SzegoReport& r);
Json to_json(const TensorBoundRecord& r);
Json to_json(const EmpiricalMeasure& m);
Json to_json(const ReferenceMeasure& m);

/// "# folner-lab <version> <command>" stamp line written before CSV headers.
std::string version_stamp(const std::string& command);

/// Columns: label,n,d_n,p,ratio,off_corner,qd_gap
void write_csv(std::ostream& os, const FolnerReport& r);
/// Columns: label,n,d_n,estimate_re,estimate_im,reference_re,reference_im,error
void write_csv(std::ostream& os, const TraceReport& r);
/// Columns: label,n,d_n,family,function,empirical,reference,error,relative_error
void write_csv(std::ostream& os, const SzegoReport& r);
/// Plot data, one row per (label, n):
/// label,n,d_n,max_poly_error,max_hat_error,kolmogorov
void write_plot_csv(std::ostream& os, const SzegoReport& r);
/// CDF pairs x,F(x) for plotting.
void write_cdf_csv(std::ostream& os, const EmpiricalMeasure& m);
void write_cdf_csv(std::ostream& os, const ReferenceMeasure& m);

}  // namespace folner
