#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "phasekit/errors.hpp"
#include "phasekit/field.hpp"

namespace phasekit {

using cplx = std::complex<double>;
using CState = std::vector<cplx>;

class NonFiniteState : public Error {
 public:
  using Error::Error;
};

/// Rational function in state variables, time and exponential symbols,
/// flattened for fast complex evaluation.
class CompiledExpr {
 public:
  CompiledExpr() = default;
  /// Every symbol of e must be a state variable or an exponential symbol of v.
  CompiledExpr(const RatExpr& e, const VField& v);
  /// `x` holds the state; `ex` the current values of the exponential symbols.
  cplx operator()(const cplx* x, const cplx* ex) const;

 private:
  struct Term {
    cplx coeff;
    std::vector<std::pair<std::size_t, unsigned>> powers;  // slot, power
  };
  std::vector<Term> num_;
  std::vector<Term> den_;
  static cplx eval(const std::vector<Term>& terms, const cplx* slots);
  std::size_t nstate_ = 0;
  std::size_t nexp_ = 0;
};

class CompiledField {
 public:
  explicit CompiledField(const VField& v);
  std::size_t dimension() const { return comps_.size(); }
  void operator()(double t, const cplx* x, cplx* out) const;
  /// Values of the exponential symbols at time t.
  std::vector<cplx> exp_values(double t) const;

 private:
  std::vector<CompiledExpr> comps_;
  std::vector<double> rates_;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<CState> states;
  double step = 0;
  std::string method = "rk4";
  /// Stopped early because some |state component| exceeded the threshold.
  bool blow_up = false;
};

constexpr double kBlowUpThreshold = 1e8;

/// Classical fixed-step fourth-order Runge-Kutta on [t0, t1]; every
/// `sample_every`-th step is recorded (the first and last always are).
Trajectory integrate(const VField& v, const CState& x0, double t0, double t1, double step,
                     std::size_t sample_every = 1);
Trajectory integrate(const CompiledField& f, const CState& x0, double t0, double t1, double step,
                     std::size_t sample_every = 1);

/// Independent trajectories from several initial states; the parallel
/// version runs them on separate threads.
std::vector<Trajectory> integrate_batch(const VField& v, const std::vector<CState>& x0s, double t0, double t1,
                                        double step, std::size_t sample_every = 1);
std::vector<Trajectory> integrate_batch_serial(const VField& v, const std::vector<CState>& x0s, double t0, double t1,
                                               double step, std::size_t sample_every = 1);

/// max_k |f(x_k, t_k) - f(x_0, t_0)| with exponential symbols taken from v.
double drift_check(const Trajectory& traj, const VField& v, const RatExpr& f);

struct ConvergenceReport {
  std::vector<double> steps;
  std::vector<double> errors;
  /// log2 of successive error ratios.
  std::vector<double> orders;
  double mean_order = 0;
};

/// Final-state error against a reference run at steps.back() / 16 for each step.
ConvergenceReport convergence_study(const VField& v, const CState& x0, double t1, const std::vector<double>& steps);

struct BlowUpFit {
  double slope = 0;
  double pole_time = 0;
  std::size_t samples = 0;
  Trajectory traj;
};

/// Integrate from x0 until blow-up, estimate the pole time by extrapolating
/// 1/x_k linearly and fit log|x_k| against log|t1 - t| for |x_k| in [lo, hi].
BlowUpFit blowup_exponent(const VField& v, const CState& x0, double step, std::size_t component = 0, double lo = 3e2,
                          double hi = 1e4, double t_max = 1.0);

/// CSV with columns t, re_<var>, im_<var>, ...
void write_csv(std::ostream& out, const Trajectory& traj, const std::vector<std::string>& vars);

}  // namespace phasekit
