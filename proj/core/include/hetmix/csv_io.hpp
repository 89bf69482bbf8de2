#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>

#include "hetmix/integrator.hpp"
#include "hetmix/sweep.hpp"

namespace hetmix {

// All CSV output uses '\n' line endings, '.' decimal separators, and 17
// significant digits (round-trip exact), so identical inputs produce
// byte-identical files.

// Header: t,S1,S2,I1,I2,Q1,Q2,R,D,C1,C2 — one row per recorded sample.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

// Header: axis1,axis2,attack1,attack2,total_infected,reported,deaths,
// oracle_attack1,oracle_attack2,extinct. One block per SweepResult,
// preceded by a comment describing the block's fixed parameters. With
// include_shapes, deaths/reported shape classifications are appended per
// block as "# shape: ..." comments.
void write_sweep_csv(std::ostream& out, std::span<const SweepResult> sweeps,
                     bool include_shapes = true);

// 17-significant-digit decimal rendering used by all writers.
std::string format_double(double value);

// Writes through a temporary file and renames on success, so the target
// path either holds a complete file or does not exist. The temporary is
// removed when the producer throws.
void write_file_atomically(const std::string& path,
                           const std::function<void(std::ostream&)>& producer);

}  // namespace hetmix
