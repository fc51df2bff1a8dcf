#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eulerscope/series.hpp"
#include "eulerscope/solver.hpp"

namespace eulerscope {

/// Validated run configuration.
///
/// Grammar: one `key = value` per line; `#` starts a comment; blank lines are
/// ignored. Keys are flat and dotted. Unknown, duplicate or malformed entries
/// fail with `source:line: message` (ErrorKind::Config).
///
///   seed                   unsigned integer (0)
///   domain.kind            torus3 | channel (torus3)
///   domain.lx, domain.ly   periods in x, y (2 pi)
///   domain.lz              torus period in z (2 pi)
///   domain.height          channel height (pi)
///   grid.n                 nodes per periodic axis (32); channel walls get n + 1
///   grid.nx, grid.ny, grid.nz   per-axis overrides (nz counts wall nodes on the channel)
///   solver.dt, solver.t_end, solver.dealias, solver.init,
///   solver.amplitude, solver.slope, solver.separation, solver.core,
///   solver.circulation, solver.perturbation, solver.epsilon,
///   solver.energy_blowup_factor
///   monitor.every          steps between samples (10)
///   monitor.criteria       comma list or `all` (all)
///   monitor.triplet        `a,b` or `none` (none)
///   monitor.eps_dir        direction-field floor (1e-6)
///   output.dir             output directory (run)
///   output.snapshot_every  steps between snapshots, a multiple of monitor.every;
///                          0 disables snapshots (monitor.every)
struct RunConfig {
    SolverConfig solver{Grid3::torus(32, 6.283185307179586), 1e-3, 1.0, true, InitKind::TaylorGreen, {}, 0, 10, 100.0};
    std::vector<Criterion> criteria;
    /// True when the criteria list was given explicitly.
    bool criteria_explicit = false;
    std::optional<Interval> triplet;
    double eps_dir = 1e-6;
    int monitor_every = 10;
    int snapshot_every = 10;
    std::string output_dir = "run";

    /// Every key with its effective value, in grammar order.
    std::vector<std::pair<std::string, std::string>> echo;
};

RunConfig parse_config(const std::string& text, const std::string& source = "config");
/// Errors: Config for unreadable files as well.
RunConfig load_config(const std::string& path);

std::vector<Criterion> parse_criteria(const std::string& list);
/// "a,b" -> Interval. Errors: Config.
Interval parse_pair(const std::string& text);

}  // namespace eulerscope
