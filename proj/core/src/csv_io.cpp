#include "hetmix/csv_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <vector>

namespace hetmix {

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,S1,S2,I1,I2,Q1,Q2,R,D,C1,C2\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const StateVector& x = traj.states[k];
    out << format_double(traj.times[k]) << ',' << format_double(x.s[0]) << ','
        << format_double(x.s[1]) << ',' << format_double(x.i[0]) << ','
        << format_double(x.i[1]) << ',' << format_double(x.q[0]) << ','
        << format_double(x.q[1]) << ',' << format_double(x.r) << ','
        << format_double(x.d) << ',' << format_double(x.c[0]) << ','
        << format_double(x.c[1]) << '\n';
  }
}

namespace {

void write_block_header(std::ostream& out, const SweepSpec& spec) {
  const ModelParams& p = spec.base;
  out << "# block: axis1 = " << spec.axis1.name;
  if (spec.axis2) out << ", axis2 = " << spec.axis2->name;
  out << "; base gamma = " << format_double(p.gamma)
      << ", pi = " << format_double(p.pi)
      << ", r01 = " << format_double(p.r0[0])
      << ", r02 = " << format_double(p.r0[1])
      << ", alpha1 = " << format_double(p.alpha[0])
      << ", alpha2 = " << format_double(p.alpha[1])
      << ", h = " << format_double(p.h) << '\n';
}

void write_shape_comments(std::ostream& out, const SweepResult& sweep) {
  // Only a single-axis block is one curve.
  if (sweep.spec.axis2 || sweep.rows.size() < 3) return;
  std::vector<double> xs, deaths, reported;
  xs.reserve(sweep.rows.size());
  for (const auto& row : sweep.rows) {
    xs.push_back(row.axis1);
    deaths.push_back(row.summary.deaths);
    reported.push_back(row.summary.reported_cumulative);
  }
  for (const char* name : {"deaths", "reported"}) {
    const auto& ys = name == std::string("deaths") ? deaths : reported;
    const ShapeReport shape = classify_shape(xs, ys, name);
    out << "# shape: " << name << " vs " << sweep.spec.axis1.name << ": "
        << shape.label()
        << "; max |second difference| = " << format_double(shape.max_abs_second_difference)
        << '\n';
  }
}

}  // namespace

void write_sweep_csv(std::ostream& out, std::span<const SweepResult> sweeps,
                     bool include_shapes) {
  out << "axis1,axis2,attack1,attack2,total_infected,reported,deaths,"
         "oracle_attack1,oracle_attack2,extinct\n";
  for (const SweepResult& sweep : sweeps) {
    write_block_header(out, sweep.spec);
    for (const auto& row : sweep.rows) {
      // Oracle attack rates are s_inf measured against the row's own group
      // sizes, so rebuild the per-point params.
      ModelParams point = sweep.spec.base;
      apply_parameter(point, sweep.spec.axis1.name, row.axis1);
      if (sweep.spec.axis2 && row.axis2)
        apply_parameter(point, sweep.spec.axis2->name, *row.axis2);
      out << format_double(row.axis1) << ','
          << (row.axis2 ? format_double(*row.axis2) : "") << ','
          << format_double(row.summary.attack_rate[0]) << ','
          << format_double(row.summary.attack_rate[1]) << ','
          << format_double(row.summary.total_infected) << ','
          << format_double(row.summary.reported_cumulative) << ','
          << format_double(row.summary.deaths) << ','
          << format_double((point.n[0] - row.oracle.s_inf[0]) / point.n[0]) << ','
          << format_double((point.n[1] - row.oracle.s_inf[1]) / point.n[1]) << ','
          << (row.summary.extinct ? '1' : '0') << '\n';
    }
    if (include_shapes) write_shape_comments(out, sweep);
  }
}

void write_file_atomically(const std::string& path,
                           const std::function<void(std::ostream&)>& producer) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out)
        throw Error(errc::bad_input, "cannot open '" + tmp.string() + "' for writing");
      producer(out);
      out.flush();
      if (!out)
        throw Error(errc::bad_input, "write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, target);
  } catch (...) {
    std::error_code ignore;
    fs::remove(tmp, ignore);
    throw;
  }
}

}  // namespace hetmix
