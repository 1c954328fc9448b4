#include "phasekit/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace phasekit {

namespace {

std::vector<std::string> expsym_names(const VField& v) {
  std::vector<std::string> out;
  for (const auto& e : v.expsyms()) out.push_back(e.name);
  return out;
}

}  // namespace

CompiledExpr::CompiledExpr(const RatExpr& e, const VField& v) : nstate_(v.dimension()), nexp_(v.expsyms().size()) {
  const auto& sv = v.statevars();
  const auto en = expsym_names(v);
  auto slot_of = [&](const std::string& s) -> std::size_t {
    auto it = std::find(sv.begin(), sv.end(), s);
    if (it != sv.end()) return static_cast<std::size_t>(it - sv.begin());
    auto jt = std::find(en.begin(), en.end(), s);
    if (jt != en.end()) return nstate_ + static_cast<std::size_t>(jt - en.begin());
    throw std::invalid_argument("numeric evaluation: symbol " + s + " has no value");
  };
  auto compile = [&](const MultiPoly& p, std::vector<Term>& out) {
    std::vector<std::size_t> slots;
    for (const auto& s : p.vars()) slots.push_back(slot_of(s));
    for (const auto& [exp, c] : p.terms()) {
      Term t{c.to_complex(), {}};
      for (std::size_t j = 0; j < exp.size(); ++j) {
        if (exp[j]) t.powers.emplace_back(slots[j], exp[j]);
      }
      out.push_back(std::move(t));
    }
  };
  compile(e.num(), num_);
  compile(e.den(), den_);
}

cplx CompiledExpr::eval(const std::vector<Term>& terms, const cplx* slots) {
  cplx sum = 0;
  for (const auto& t : terms) {
    cplx m = t.coeff;
    for (const auto& [s, p] : t.powers) {
      for (unsigned k = 0; k < p; ++k) m *= slots[s];
    }
    sum += m;
  }
  return sum;
}

cplx CompiledExpr::operator()(const cplx* x, const cplx* ex) const {
  cplx slots[16];
  std::vector<cplx> big;
  cplx* s = slots;
  if (nstate_ + nexp_ > 16) {
    big.resize(nstate_ + nexp_);
    s = big.data();
  }
  std::copy(x, x + nstate_, s);
  std::copy(ex, ex + nexp_, s + nstate_);
  return eval(num_, s) / eval(den_, s);
}

CompiledField::CompiledField(const VField& v) {
  for (const auto& c : v.components()) comps_.emplace_back(c, v);
  for (const auto& e : v.expsyms()) rates_.push_back(e.rate.re().get_d());
  for (const auto& e : v.expsyms()) {
    if (!e.rate.is_real()) throw std::invalid_argument("numeric integration needs real exponential rates");
  }
}

std::vector<cplx> CompiledField::exp_values(double t) const {
  std::vector<cplx> out;
  for (double r : rates_) out.emplace_back(std::exp(r * t), 0.0);
  return out;
}

void CompiledField::operator()(double t, const cplx* x, cplx* out) const {
  const auto ex = exp_values(t);
  for (std::size_t k = 0; k < comps_.size(); ++k) out[k] = comps_[k](x, ex.data());
}

Trajectory integrate(const CompiledField& f, const CState& x0, double t0, double t1, double step,
                     std::size_t sample_every) {
  if (!(step > 0)) throw std::invalid_argument("integrate: step must be positive");
  if (x0.size() != f.dimension()) throw std::invalid_argument("integrate: initial state has wrong dimension");
  if (sample_every == 0) sample_every = 1;
  const std::size_t n = x0.size();
  const auto nsteps = static_cast<std::size_t>(std::llround((t1 - t0) / step));
  Trajectory tr;
  tr.step = step;
  tr.times.push_back(t0);
  tr.states.push_back(x0);
  CState x = x0;
  CState k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (std::size_t s = 1; s <= nsteps; ++s) {
    const double t = t0 + static_cast<double>(s - 1) * step;
    f(t, x.data(), k1.data());
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * step * k1[i];
    f(t + 0.5 * step, tmp.data(), k2.data());
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * step * k2[i];
    f(t + 0.5 * step, tmp.data(), k3.data());
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + step * k3[i];
    f(t + step, tmp.data(), k4.data());
    double big = 0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (!std::isfinite(x[i].real()) || !std::isfinite(x[i].imag())) {
        throw NonFiniteState("non-finite state at t = " + std::to_string(t + step));
      }
      big = std::max(big, std::abs(x[i]));
    }
    const double tn = t0 + static_cast<double>(s) * step;
    const bool last = s == nsteps || big > kBlowUpThreshold;
    if (last || s % sample_every == 0) {
      tr.times.push_back(tn);
      tr.states.push_back(x);
    }
    if (big > kBlowUpThreshold) {
      tr.blow_up = true;
      break;
    }
  }
  return tr;
}

Trajectory integrate(const VField& v, const CState& x0, double t0, double t1, double step, std::size_t sample_every) {
  return integrate(CompiledField(v), x0, t0, t1, step, sample_every);
}

std::vector<Trajectory> integrate_batch_serial(const VField& v, const std::vector<CState>& x0s, double t0, double t1,
                                               double step, std::size_t sample_every) {
  const CompiledField f(v);
  std::vector<Trajectory> out;
  for (const auto& x0 : x0s) out.push_back(integrate(f, x0, t0, t1, step, sample_every));
  return out;
}

std::vector<Trajectory> integrate_batch(const VField& v, const std::vector<CState>& x0s, double t0, double t1,
                                        double step, std::size_t sample_every) {
  const CompiledField f(v);
  std::vector<Trajectory> out(x0s.size());
  std::vector<std::string> errors(x0s.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < static_cast<long>(x0s.size()); ++k) {
    const auto i = static_cast<std::size_t>(k);
    try {
      out[i] = integrate(f, x0s[i], t0, t1, step, sample_every);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw NonFiniteState(e);
  }
  return out;
}

double drift_check(const Trajectory& traj, const VField& v, const RatExpr& f) {
  if (traj.states.empty()) return 0;
  const CompiledExpr g(f, v);
  const CompiledField cf(v);
  auto value = [&](std::size_t k) { return g(traj.states[k].data(), cf.exp_values(traj.times[k]).data()); };
  const cplx f0 = value(0);
  double worst = 0;
  for (std::size_t k = 1; k < traj.states.size(); ++k) worst = std::max(worst, std::abs(value(k) - f0));
  return worst;
}

ConvergenceReport convergence_study(const VField& v, const CState& x0, double t1, const std::vector<double>& steps) {
  const CompiledField f(v);
  ConvergenceReport r;
  r.steps = steps;
  const double href = *std::min_element(steps.begin(), steps.end()) / 16.0;
  const CState ref = integrate(f, x0, 0.0, t1, href, 1u << 30).states.back();
  for (double h : steps) {
    const CState x = integrate(f, x0, 0.0, t1, h, 1u << 30).states.back();
    double err = 0;
    for (std::size_t i = 0; i < x.size(); ++i) err = std::max(err, std::abs(x[i] - ref[i]));
    r.errors.push_back(err);
  }
  double sum = 0;
  for (std::size_t k = 1; k < r.errors.size(); ++k) {
    const double o = std::log2(r.errors[k - 1] / r.errors[k]) / std::log2(steps[k - 1] / steps[k]);
    r.orders.push_back(o);
    sum += o;
  }
  r.mean_order = r.orders.empty() ? 0 : sum / static_cast<double>(r.orders.size());
  return r;
}

BlowUpFit blowup_exponent(const VField& v, const CState& x0, double step, std::size_t component, double lo, double hi,
                          double t_max) {
  BlowUpFit fit;
  fit.traj = integrate(v, x0, 0.0, t_max, step);
  const auto& tr = fit.traj;
  const std::size_t n = tr.states.size();
  if (!tr.blow_up || n < 3) throw Error("blowup_exponent: no blow-up before t = " + std::to_string(t_max));
  const cplx u1 = 1.0 / tr.states[n - 1][component];
  const cplx u0 = 1.0 / tr.states[n - 2][component];
  fit.pole_time = tr.times[n - 1] - (u1 * (tr.times[n - 1] - tr.times[n - 2]) / (u1 - u0)).real();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double mag = std::abs(tr.states[k][component]);
    const double tau = fit.pole_time - tr.times[k];
    if (mag < lo || mag > hi || tau <= 0) continue;
    const double lx = std::log(tau);
    const double ly = std::log(mag);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++fit.samples;
  }
  if (fit.samples < 2) throw Error("blowup_exponent: too few samples in the fit window");
  const double m = static_cast<double>(fit.samples);
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return fit;
}

void write_csv(std::ostream& out, const Trajectory& traj, const std::vector<std::string>& vars) {
  out << "t";
  for (const auto& v : vars) out << ",re_" << v << ",im_" << v;
  out << "\n";
  out.precision(17);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    out << traj.times[k];
    for (const auto& z : traj.states[k]) out << ',' << z.real() << ',' << z.imag();
    out << "\n";
  }
}

}  // namespace phasekit
