#include "adsim/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace adsim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double aligned_distance(const Eigen::Ref<const State>& a, const Eigen::Ref<const State>& b) {
  const Complex ip = inner(a, b);
  // Orthogonal pair: every phase gives the same distance.
  if (std::abs(ip) <= 1e-15 * a.norm() * b.norm())
    return std::sqrt(a.squaredNorm() + b.squaredNorm());
  // Rotate and subtract outright; the norm-and-overlap shortcut loses half
  // the significand to cancellation when the states nearly coincide.
  return (std::polar(1.0, std::arg(ip)) * a - b).norm();
}

// Two trajectories are comparable only when they ran the same schedule
// geometry: same space, same horizon, same interpolation start point, and
// samples taken at the same times.
void require_comparable(const Trajectory& a, const Trajectory& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("trajectory comparison: dimension mismatch");
  if (a.schedule.total_time != b.schedule.total_time)
    throw std::invalid_argument("trajectory comparison: total_time mismatch");
  if (a.times.size() != b.times.size() || a.times.size() < 2)
    throw std::invalid_argument("trajectory comparison: sample grids differ");
  const double time_tol = 1e-12 * std::max(1.0, a.schedule.total_time);
  for (std::size_t k = 0; k < a.times.size(); ++k)
    if (std::abs(a.times[k] - b.times[k]) > time_tol)
      throw std::invalid_argument("trajectory comparison: sample times differ at index " +
                                  std::to_string(k));
  const double scale = std::max(1.0, a.schedule.initial.matrix.cwiseAbs().maxCoeff());
  if ((a.schedule.initial.matrix - b.schedule.initial.matrix).cwiseAbs().maxCoeff() >
      1e-14 * scale)
    throw std::invalid_argument("trajectory comparison: initial Hamiltonians differ");
}

bool is_unit_delta_well(const Potential& p, Eigen::Index& site) {
  Eigen::Index hits = 0;
  for (Eigen::Index x = 0; x < p.values.size(); ++x) {
    if (p.values[x] == -1.0) {
      site = x;
      ++hits;
    } else if (p.values[x] != 0.0) {
      return false;
    }
  }
  return hits == 1;
}

}  // namespace

BoundReport deviation_bound(const Potential& p, const InitialHamiltonian& hi, double total_time) {
  if (p.dim() != hi.dim())
    throw std::invalid_argument("deviation_bound: potential dim " + std::to_string(p.dim()) +
                                " does not match Hamiltonian dim " + std::to_string(hi.dim()));
  if (!(total_time > 0.0) || !std::isfinite(total_time))
    throw std::invalid_argument("deviation_bound: total_time must be positive and finite");

  BoundReport r;
  r.total_time = total_time;
  r.hp_gi_norm = norm(apply_potential(p, hi.ground_state));
  r.bound = total_time * r.hp_gi_norm;
  Eigen::Index site = -1;
  r.overlap = is_unit_delta_well(p, site) ? std::abs(hi.ground_state[site]) : kNaN;
  r.deviation = kNaN;
  r.aligned_deviation = kNaN;
  r.satisfied = false;
  return r;
}

double deviation(const Trajectory& full, const Trajectory& reference) {
  require_comparable(full, reference);
  return (full.final_state() - reference.final_state()).norm();
}

double aligned_deviation(const Trajectory& full, const Trajectory& reference) {
  require_comparable(full, reference);
  return aligned_distance(full.final_state(), reference.final_state());
}

void attach_deviation(BoundReport& report, const Trajectory& full, const Trajectory& reference,
                      double slack) {
  if (!(slack >= 0.0)) throw std::invalid_argument("attach_deviation: slack must be >= 0");
  report.deviation = deviation(full, reference);
  report.aligned_deviation = aligned_deviation(full, reference);
  report.slack = slack;
  report.satisfied = report.deviation <= report.bound + slack;
}

GronwallReport gronwall_check(const Trajectory& full, const Trajectory& reference,
                              const Potential& p) {
  require_comparable(full, reference);
  if (p.dim() != full.dim())
    throw std::invalid_argument("gronwall_check: potential dimension mismatch");
  const std::size_t m = full.times.size();
  if (m < 20)
    throw std::invalid_argument("gronwall_check: needs at least 20 samples, got " +
                                std::to_string(m));

  std::vector<double> dist(m);
  std::vector<double> source(m);
  for (std::size_t k = 0; k < m; ++k) {
    dist[k] = (full.states[k] - reference.states[k]).norm();
    source[k] = norm(apply_potential(p, reference.states[k]));
  }

  GronwallReport rep;
  rep.times.assign(full.times.begin() + 1, full.times.end() - 1);
  rep.derivative.resize(m - 2);
  rep.source_norm.resize(m - 2);
  rep.max_violation = 0.0;
  for (std::size_t k = 1; k + 1 < m; ++k) {
    const double h = full.times[k + 1] - full.times[k - 1];
    rep.derivative[k - 1] = (dist[k + 1] - dist[k - 1]) / h;
    rep.source_norm[k - 1] = source[k];
    const double excess = rep.derivative[k - 1] - source[k];
    if (excess > rep.max_violation) rep.max_violation = excess;
  }
  rep.source_constancy = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double wobble = std::abs(source[k] - source[0]);
    if (wobble > rep.source_constancy) rep.source_constancy = wobble;
  }
  // g_0 never leaves the initial-ground-state ray, so the source norm is a
  // constant of the motion; drift here means the reference run is not one.
  if (rep.source_constancy > 1e-8)
    throw PropagationError("gronwall_check: ||diag(P) g_0(t)|| varies by " +
                           std::to_string(rep.source_constancy) +
                           " over the run; reference trajectory is off its ray");
  return rep;
}

double success_probability(const Eigen::Ref<const State>& final_state, Eigen::Index x_min) {
  if (x_min < 0 || x_min >= final_state.size())
    throw std::out_of_range("success_probability: x_min " + std::to_string(x_min) +
                            " out of range for dim " + std::to_string(final_state.size()));
  return std::norm(final_state[x_min]);
}

GapProfile gap_profile(const Schedule& sch, int samples) {
  if (sch.variant != ScheduleVariant::Full)
    throw std::invalid_argument("gap_profile: schedule variant must be Full");
  if (samples < 2) throw std::invalid_argument("gap_profile: needs at least 2 samples");

  GapProfile gp;
  gp.times.resize(samples);
  gp.gaps.resize(samples);
  gp.min_gap = std::numeric_limits<double>::infinity();
  gp.argmin_time = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = sch.total_time * static_cast<double>(k) / static_cast<double>(samples - 1);
    const GroundState g = ground_state_of(interpolate(sch, t));
    gp.times[k] = t;
    gp.gaps[k] = g.gap;
    if (g.gap < gp.min_gap) {
      gp.min_gap = g.gap;
      gp.argmin_time = t;
    }
  }
  return gp;
}

ClassicalResult classical_minimize(const Potential& p, Eigen::Index upper_bound) {
  if (upper_bound < 1 || upper_bound > p.dim())
    throw std::out_of_range("classical_minimize: upper_bound " + std::to_string(upper_bound) +
                            " out of range for dim " + std::to_string(p.dim()));
  ClassicalResult best{0, p.values[0]};
  for (Eigen::Index x = 1; x < upper_bound; ++x)
    if (p.values[x] < best.value) best = {x, p.values[x]};
  return best;
}

}  // namespace adsim
