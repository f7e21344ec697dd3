#pragma once

// CSV import/export.  All numeric output goes through format_number, which
// prints 17 significant digits so a write/read round trip reproduces every
// double bit-exactly.  Readers validate the header and report the line
// number of the first offending row.

#include <filesystem>
#include <string>

#include "gflab/grid.hpp"
#include "gflab/locality.hpp"

namespace gflab::io {

// shortest-width general format, 17 significant digits
std::string format_number(double x);

// header: i0[,i1[,i2]],component,re,im ; one row per (cell, component),
// cell-major order
void write_field_csv(const std::filesystem::path& file, const Field& f);
Field read_field_csv(const std::filesystem::path& file, const GridSpec& grid,
                     int fiber_dim);

// header: i0[,i1[,i2]],row,col,re,im ; one row per matrix entry
void write_projection_field_csv(const std::filesystem::path& file,
                                const ProjectionField& p);
ProjectionField read_projection_field_csv(const std::filesystem::path& file,
                                          const GridSpec& grid, int fiber_dim,
                                          const Tolerances& tol = {});

// triplet format: header row,col,re,im ; exact zeros are omitted
void write_global_operator_csv(const std::filesystem::path& file,
                               const GlobalOperator& g);
GlobalOperator read_global_operator_csv(const std::filesystem::path& file,
                                        const GridSpec& grid, int fiber_dim);

// header: t,i0[,i1[,i2]],component,re,im
void write_trajectory_csv(const std::filesystem::path& file,
                          const Trajectory& traj);

}  // namespace gflab::io
