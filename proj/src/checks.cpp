#include "bsq/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bsq/error.hpp"
#include "bsq/norms.hpp"
#include "bsq/paraproduct.hpp"
#include "bsq/spectral_ops.hpp"

namespace bsq {

double EstimateRecord::empirical_constant() const {
  double c = 0.0;
  for (const auto& s : samples) c = std::max(c, s.ratio);
  return c;
}

void RunningIntegral::add(double t, double f) {
  if (count_ > 0) value_ += 0.5 * (t - last_t_) * (f + last_f_);
  last_t_ = t;
  last_f_ = f;
  ++count_;
}

namespace {

const LebesgueExponent kInf = LebesgueExponent::infinity();
const LebesgueExponent kOne{1.0};
const LebesgueExponent kTwo{2.0};

double safe_ratio(double lhs, double rhs) {
  if (rhs > 0.0) return lhs / rhs;
  return lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

double besov(const SpectralField& f, const LPFamily& family, double s, const LebesgueExponent& p) {
  return besov_from_bands(band_norms(f, family, p), s, kOne);
}

double gamma_norm(const SpectralField& f, const CheckContext& c, bool use_gamma1) {
  return bgamma_from_bands(band_norms(f, *c.family, kInf), *c.gamma, use_gamma1);
}

double gamma_norm(const VelocityField& v, const CheckContext& c) {
  return bgamma_from_bands(band_norms(v, *c.family, kInf), *c.gamma, false);
}

class BaseMonitor : public Monitor {
 public:
  BaseMonitor(std::string id, const CheckContext& c) : context_(c) {
    record_.check_id = std::move(id);
    record_.meta.grid_n = c.family->grid().n();
    record_.meta.kappa = c.kappa;
    record_.meta.gamma_name = c.gamma->name;
    record_.meta.p0 = c.exponents.p0.value();
    record_.meta.p1 = c.exponents.p1.value();
    record_.meta.j_max = c.family->j_max();
  }

  EstimateRecord finish() override { return record_; }

 protected:
  void push(double t, double lhs, double rhs) { record_.samples.push_back({t, lhs, rhs, safe_ratio(lhs, rhs)}); }
  void push(double t, double lhs, double rhs, double ratio) { record_.samples.push_back({t, lhs, rhs, ratio}); }
  bool first() const { return record_.samples.empty(); }

  CheckContext context_;
  EstimateRecord record_;
};

// ||w(t)||_p <= ||w0||_p + int ||grad rho||_p
class TransportMonitor final : public BaseMonitor {
 public:
  TransportMonitor(std::string id, const CheckContext& c, LebesgueExponent p) : BaseMonitor(std::move(id), c), p_(p) {}
  void observe(const SimState& s, const VelocityField&) override {
    const double w = lp_norm(s.omega, p_);
    if (first()) w0_ = w;
    forcing_.add(s.t, lp_norm(gradient(s.rho), p_));
    push(s.t, w, w0_ + forcing_.value());
  }

 private:
  LebesgueExponent p_;
  double w0_ = 0.0;
  RunningIntegral forcing_;
};

// ||w(t)||_{Gamma1} <= ||w0||_Gamma + int ||grad rho||_Gamma
class Gamma1Monitor final : public BaseMonitor {
 public:
  using BaseMonitor::BaseMonitor;
  void observe(const SimState& s, const VelocityField&) override {
    if (first()) w0_ = gamma_norm(s.omega, context_, false);
    forcing_.add(s.t, gamma_norm(gradient(s.rho), context_));
    push(s.t, gamma_norm(s.omega, context_, true), w0_ + forcing_.value());
  }

 private:
  double w0_ = 0.0;
  RunningIntegral forcing_;
};

// ||rho(t)||_2^2 + 2 kappa int ||grad rho||_2^2 = ||rho0||_2^2. The dissipation
// integral carries the Euler-Maclaurin end correction when samples are uniform.
class EnergyMonitor final : public BaseMonitor {
 public:
  using BaseMonitor::BaseMonitor;
  void observe(const SimState& s, const VelocityField&) override {
    const VelocityField g = gradient(s.rho);
    const double d = l2_norm_squared(g.u1) + l2_norm_squared(g.u2);
    const double e = l2_norm_squared(s.rho);
    if (first()) e0_ = e;
    integral_.add(s.t, d);
    t_.push_back(s.t);
    f_.push_back(d);
    push(s.t, e + 2.0 * context_.kappa * corrected(), e0_);
  }

 private:
  double corrected() {
    const std::size_t n = t_.size();
    if (n < 3) return integral_.value();
    const double h = t_[1] - t_[0];
    const double h_last = t_[n - 1] - t_[n - 2];
    const double h_prev = t_[n - 2] - t_[n - 3];
    if (uniform_ && (std::abs(h_last - h) > 1e-9 * h || std::abs(h_prev - h) > 1e-9 * h)) uniform_ = false;
    if (!uniform_) return integral_.value();
    const double d0 = (-3.0 * f_[0] + 4.0 * f_[1] - f_[2]) / (2.0 * h);
    const double d1 = (3.0 * f_[n - 1] - 4.0 * f_[n - 2] + f_[n - 3]) / (2.0 * h);
    return integral_.value() - h * h / 12.0 * (d1 - d0);
  }

  double e0_ = 0.0;
  bool uniform_ = true;
  RunningIntegral integral_;
  std::vector<double> t_, f_;
};

// ||rho||_{B0_inf,inf} <= ||rho||_2 + ||grad rho||_2
class BernsteinMonitor final : public BaseMonitor {
 public:
  using BaseMonitor::BaseMonitor;
  void observe(const SimState& s, const VelocityField&) override {
    const double lhs = b0infinf_from_bands(band_norms(s.rho, *context_.family, kInf));
    const VelocityField g = gradient(s.rho);
    push(s.t, lhs, std::sqrt(l2_norm_squared(s.rho)) + std::sqrt(l2_norm_squared(g.u1) + l2_norm_squared(g.u2)));
  }
};

// kappa int ||rho||_{B1_p,1} <= (1 + kappa t)(||rho0||_{B-1_p,1} + int ||u.grad rho||_{B-1_p,1})
class DuhamelMonitor final : public BaseMonitor {
 public:
  DuhamelMonitor(std::string id, const CheckContext& c, LebesgueExponent p) : BaseMonitor(std::move(id), c), p_(p) {}
  void observe(const SimState& s, const VelocityField& u) override {
    const LPFamily& family = *context_.family;
    if (first()) r0_ = besov(s.rho, family, -1.0, p_);
    smooth_.add(s.t, besov(s.rho, family, 1.0, p_));
    source_.add(s.t, besov(advect(u, s.rho), family, -1.0, p_));
    const double k = context_.kappa;
    push(s.t, k * smooth_.value(), (1.0 + k * s.t) * (r0_ + source_.value()));
  }

 private:
  LebesgueExponent p_;
  double r0_ = 0.0;
  RunningIntegral smooth_, source_;
};

// Per band in L^2:  ||Delta_j rho(t)|| <= e^{-c_j t}||Delta_j rho0|| + int e^{-c_j (t-s)}||Delta_j h(s)|| ds
// with h = -u.grad rho and c_j = kappa (a 2^j)^2 the squared inner radius of
// the band (0 for j = -1). The worst band is recorded.
class CheminMonitor final : public BaseMonitor {
 public:
  using BaseMonitor::BaseMonitor;
  void observe(const SimState& s, const VelocityField& u) override {
    const LPFamily& family = *context_.family;
    const auto rho = band_norms(s.rho, family, kTwo);
    const auto h = band_norms(advect(u, s.rho), family, kTwo);
    const std::size_t nb = rho.size();
    if (first()) {
      rho0_ = rho;
      duhamel_.assign(nb, 0.0);
      rates_.resize(nb);
      for (std::size_t b = 0; b < nb; ++b) {
        const int j = static_cast<int>(b) - 1;
        const double r = j < 0 ? 0.0 : family.params().plateau * std::exp2(j);
        rates_[b] = context_.kappa * r * r;
      }
    } else {
      const double dt = s.t - last_t_;
      for (std::size_t b = 0; b < nb; ++b) {
        const double decay = std::exp(-rates_[b] * dt);
        duhamel_[b] = decay * duhamel_[b] + 0.5 * dt * (decay * last_h_[b] + h[b]);
      }
    }
    // Bands still at roundoff level carry no information about the decay.
    const double floor = 1e-12 * std::max(*std::max_element(rho.begin(), rho.end()),
                                          *std::max_element(rho0_.begin(), rho0_.end()));
    double worst = -1.0, lhs = 0.0, rhs = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      const double r = std::exp(-rates_[b] * s.t) * rho0_[b] + duhamel_[b];
      if (b > 0 && std::max(rho[b], r) <= floor) continue;
      const double q = safe_ratio(rho[b], r);
      if (q > worst) {
        worst = q;
        lhs = rho[b];
        rhs = r;
        worst_band_ = static_cast<double>(b) - 1.0;
      }
    }
    record_.extras["worst_band"] = worst_band_;
    last_t_ = s.t;
    last_h_ = h;
    push(s.t, lhs, rhs, worst);
  }

 private:
  std::vector<double> rho0_, duhamel_, rates_, last_h_;
  double last_t_ = 0.0;
  double worst_band_ = -1.0;
};

// Theta(t) = int max(||grad rho||_p0, ||grad rho||_Gamma) against Upsilon(t)
// with unit constant. Upsilon is handled through its logarithm.
class ThetaUpsilonMonitor final : public BaseMonitor {
 public:
  using BaseMonitor::BaseMonitor;
  void observe(const SimState& s, const VelocityField&) override {
    const LPFamily& family = *context_.family;
    const LebesgueExponent& p0 = context_.exponents.p0;
    if (first()) {
      b_ = std::max(besov(s.rho, family, -1.0, p0), besov(s.rho, family, -1.0, kInf));
      r2_ = l2_norm_squared(s.rho);
      w_ = std::max(lp_norm(s.omega, p0), gamma_norm(s.omega, context_, false));
    }
    const VelocityField g = gradient(s.rho);
    theta_.add(s.t, std::max(lp_norm(g, p0), gamma_norm(g, context_)));
    const double k = context_.kappa;
    const double alpha = (1.0 + k * s.t) / k;
    const double log_upsilon =
        0.5 * std::log(alpha * alpha * (b_ * b_ + alpha * s.t * r2_ * w_ * w_)) + alpha * alpha * alpha * r2_ * s.t;
    const double theta = theta_.value();
    const double ratio = theta > 0.0 ? std::exp(std::log(theta) - log_upsilon) : 0.0;
    record_.extras["log_upsilon"] = log_upsilon;
    push(s.t, theta, std::exp(log_upsilon), ratio);
  }

 private:
  double b_ = 0.0, r2_ = 0.0, w_ = 0.0;
  RunningIntegral theta_;
};

// Parts of (u.grad) rho = sum_m T_{u_m} d_m rho + T_{d_m rho} u_m + R(u_m, d_m rho)
// in B^{-1}_{inf,1}, against ||rho||_{B0_inf,inf}(||w||_p0 + ||w||_Gamma1).
class ParaproductMonitor final : public BaseMonitor {
 public:
  ParaproductMonitor(std::string id, const CheckContext& c, bool remainder)
      : BaseMonitor(std::move(id), c), remainder_(remainder) {}
  void observe(const SimState& s, const VelocityField& u) override {
    const LPFamily& family = *context_.family;
    const VelocityField g = gradient(s.rho);
    const BonySplit a = bony_decompose(u.u1, g.u1, family);
    const BonySplit b = bony_decompose(u.u2, g.u2, family);
    const SpectralField part = remainder_ ? a.remainder + b.remainder : a.t_fg + a.t_gf + b.t_fg + b.t_gf;
    const double lhs = besov(part, family, -1.0, kInf);
    const double rho_b0 = b0infinf_from_bands(band_norms(s.rho, family, kInf));
    const double w = lp_norm(s.omega, context_.exponents.p0) + gamma_norm(s.omega, context_, true);
    push(s.t, lhs, rho_b0 * w);
  }

 private:
  bool remainder_;
};

class CommutatorMonitor final : public BaseMonitor {
 public:
  using BaseMonitor::BaseMonitor;
  void observe(const SimState& s, const VelocityField& u) override {
    const auto reports = commutator_bound_sweep(u, s.rho, *context_.family);
    const RatioReport* worst = &reports.front();
    for (const auto& r : reports) {
      if (r.ratio > worst->ratio) worst = &r;
    }
    record_.extras["worst_band"] = worst->band;
    push(s.t, worst->lhs, worst->rhs, worst->ratio);
  }
};

// sum_{j>N} ||Delta_j rho||_inf <= 2^-N Pi(N), worst N in [-1, j_max - 2].
class AbelTailMonitor final : public BaseMonitor {
 public:
  using BaseMonitor::BaseMonitor;
  void observe(const SimState& s, const VelocityField&) override {
    const auto bands = band_norms(s.rho, *context_.family, kInf);
    const int j_max = context_.family->j_max();
    double worst = -1.0, lhs = 0.0, rhs = 0.0;
    for (int n = -1; n <= std::max(-1, j_max - 2); ++n) {
      double tail = 0.0;
      for (int j = n + 1; j <= j_max; ++j) tail += bands[static_cast<std::size_t>(j + 1)];
      const double bound = std::exp2(-n) * (*context_.gamma)(n);
      const double q = safe_ratio(tail, bound);
      if (q > worst) {
        worst = q;
        lhs = tail;
        rhs = bound;
      }
    }
    push(s.t, lhs, rhs, worst);
  }
};

void require_finite(const LebesgueExponent& p, const char* which) {
  if (p.is_infinite()) throw InputError(std::string("exponent ") + which + " must be finite");
}

}  // namespace

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids = {
      "vorticity_transport_p0", "vorticity_transport_p1", "vorticity_gamma1", "energy_identity",
      "bernstein_b0inf",        "duhamel_smoothing_inf",  "duhamel_smoothing_p0", "chemin_band",
      "density_theta_upsilon",  "paraproduct_remainder",  "paraproduct_low_high", "commutator",
      "abel_tail"};
  return ids;
}

bool is_check_id(const std::string& id) {
  const auto& ids = check_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::unique_ptr<Monitor> make_monitor(const std::string& id, const CheckContext& c) {
  if (c.family == nullptr || c.gamma == nullptr) throw InputError("check context needs a family and a gamma");
  require_finite(c.exponents.p0, "p0");
  require_finite(c.exponents.p1, "p1");
  if (c.exponents.p0.value() > c.exponents.p1.value()) throw InputError("exponents require p0 <= p1");
  if (id == "vorticity_transport_p0") return std::make_unique<TransportMonitor>(id, c, c.exponents.p0);
  if (id == "vorticity_transport_p1") return std::make_unique<TransportMonitor>(id, c, c.exponents.p1);
  if (id == "vorticity_gamma1") return std::make_unique<Gamma1Monitor>(id, c);
  if (id == "energy_identity") return std::make_unique<EnergyMonitor>(id, c);
  if (id == "bernstein_b0inf") return std::make_unique<BernsteinMonitor>(id, c);
  if (id == "duhamel_smoothing_inf") return std::make_unique<DuhamelMonitor>(id, c, kInf);
  if (id == "duhamel_smoothing_p0") return std::make_unique<DuhamelMonitor>(id, c, c.exponents.p0);
  if (id == "chemin_band") return std::make_unique<CheminMonitor>(id, c);
  if (id == "density_theta_upsilon") return std::make_unique<ThetaUpsilonMonitor>(id, c);
  if (id == "paraproduct_remainder") return std::make_unique<ParaproductMonitor>(id, c, true);
  if (id == "paraproduct_low_high") return std::make_unique<ParaproductMonitor>(id, c, false);
  if (id == "commutator") return std::make_unique<CommutatorMonitor>(id, c);
  if (id == "abel_tail") return std::make_unique<AbelTailMonitor>(id, c);
  throw InputError("unknown check id: " + id);
}

std::vector<EstimateRecord> run_inequality_checks(const std::vector<std::string>& ids, const Trajectory& traj,
                                                  const LPFamily& family, const GammaSpec& gamma,
                                                  const Exponents& exponents) {
  if (traj.states.empty()) throw InputError("trajectory has no stored states");
  if (!(traj.states.front().omega.grid() == family.grid())) {
    throw InputError("trajectory grid does not match the LP family grid");
  }
  const double spacing = traj.sample_interval();
  if (spacing > 10.0 * traj.config.dt * (1.0 + 1e-9)) {
    throw InputError("trajectory sample spacing exceeds 10 dt; rerun with a smaller stride");
  }
  const CheckContext context{&family, &gamma, exponents, traj.config.kappa};
  std::vector<std::unique_ptr<Monitor>> monitors;
  for (const auto& id : ids) monitors.push_back(make_monitor(id, context));
  const VelocityField frozen = velocity_of(traj.states.front().omega, traj.config);
  for (const auto& s : traj.states) {
    const VelocityField u = traj.config.frozen_velocity ? frozen : velocity_of(s.omega, traj.config);
    for (auto& m : monitors) m->observe(s, u);
  }
  std::vector<EstimateRecord> out;
  for (auto& m : monitors) out.push_back(m->finish());
  return out;
}

EstimateRecord run_inequality_check(const std::string& id, const Trajectory& traj, const LPFamily& family,
                                    const GammaSpec& gamma, const Exponents& exponents) {
  return run_inequality_checks({id}, traj, family, gamma, exponents).front();
}

}  // namespace bsq
