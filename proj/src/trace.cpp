#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include "artva/engine.hpp"
#include "artva/errors.hpp"

namespace artva {
namespace {

// Nine significant digits for every floating-point cell.
void put(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  out << buf;
}

void put_vec(std::ostream& out, const Eigen::Vector3d& v) {
  put(out, v.x());
  out << ',';
  put(out, v.y());
  out << ',';
  put(out, v.z());
}

}  // namespace

void write_trace_csv(const RunTrace& trace, std::ostream& out) {
  const int n = trace.config.n_agents;
  out << "t,cx,cy,cz,ex,ey,ez,err_norm,dist_centroid,sigma";
  for (int i = 1; i <= n; ++i) {
    out << ",a" << i << "_bx,a" << i << "_by,a" << i << "_bz";
    out << ",a" << i << "_px,a" << i << "_py,a" << i << "_pz";
    out << ",a" << i << "_y";
    out << ",a" << i << "_gx,a" << i << "_gy,a" << i << "_gz";
    out << ",a" << i << "_ux,a" << i << "_uy,a" << i << "_uz";
  }
  out << ",sigma_smooth,reset_fallback\n";

  for (const TraceRow& row : trace.rows) {
    out << row.t << ',';
    put_vec(out, row.centroid);
    out << ',';
    put_vec(out, row.error);
    out << ',';
    put(out, row.err_norm);
    out << ',';
    put(out, row.dist_centroid);
    out << ',';
    put(out, row.sigma);
    for (int i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      out << ',';
      put_vec(out, row.bases[idx]);
      out << ',';
      put_vec(out, row.positions[idx]);
      out << ',';
      put(out, row.intensities[idx]);
      out << ',';
      put_vec(out, row.grads[idx]);
      out << ',';
      put_vec(out, row.bearings[idx]);
    }
    out << ',';
    put(out, row.sigma_smooth);
    out << ',' << (row.reset_fallback ? 1 : 0) << '\n';
  }
}

void write_trace_csv(const RunTrace& trace, const std::string& path) {
  std::ofstream out{path};
  if (!out) throw IoError{"cannot open trace file '" + path + "' for writing"};
  write_trace_csv(trace, out);
  out.flush();
  if (!out) throw IoError{"failed writing trace file '" + path + "'"};
}

}  // namespace artva
