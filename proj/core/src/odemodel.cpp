#include "boltzgap/odemodel.hpp"

#include <cmath>
#include <stdexcept>

namespace boltzgap {

double f_gap(double x) {
  if (x < 0.0 || std::isnan(x)) throw std::domain_error("f_gap requires x >= 0");
  return 4.0 * x * x / ((1.0 + 2.0 * x) + std::sqrt(1.0 + 4.0 * x));
}

namespace {
double rk4_step(double X, double dt) {
  auto rhs = [](double x) { return -f_gap(std::max(x, 0.0)); };
  const double k1 = rhs(X);
  const double k2 = rhs(X + 0.5 * dt * k1);
  const double k3 = rhs(X + 0.5 * dt * k2);
  const double k4 = rhs(X + dt * k3);
  return X + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}
}  // namespace

OdeSeries integrate_special(double eps, double s, double T, double dt, bool resolve_crossing) {
  if (!(eps > 0.0 && eps < 1.0) || !(s > 0.0 && s < 1.0)) throw std::invalid_argument("need eps, s in (0, 1)");
  if (!(dt > 0.0) || !(T >= 0.0)) throw std::invalid_argument("need dt > 0 and T >= 0");
  OdeSeries out;
  out.eps = eps;
  out.s = s;
  double X = std::pow(eps, -2.0 * s);
  double t = 0.0;
  out.t.push_back(t);
  out.X.push_back(X);
  const auto nsteps = static_cast<long long>(std::llround(T / dt));
  bool crossed = X <= 0.25;
  for (long long n = 1; n <= nsteps; ++n) {
    const double t_next = n * dt;
    double h = t_next - t;
    double Xn = rk4_step(X, h);
    if (resolve_crossing && !crossed && Xn <= 0.25) {
      // Bisection on the partial step length so that X(t*) = 1/4.
      double lo = 0.0, hi = h;
      for (int it = 0; it < 200 && hi - lo > 1e-17 * (1.0 + t); ++it) {
        const double mid = 0.5 * (lo + hi);
        (rk4_step(X, mid) > 0.25 ? lo : hi) = mid;
      }
      const double tau = hi;
      if (tau < h) {
        t += tau;
        X = 0.25;
        out.t.push_back(t);
        out.X.push_back(X);
        out.crossing = t;
        h = t_next - t;
        Xn = rk4_step(X, h);
      } else {
        out.crossing = t_next;
        Xn = 0.25;
      }
      crossed = true;
    }
    if (Xn <= 0.25) crossed = true;
    t = t_next;
    X = Xn;
    out.t.push_back(t);
    out.X.push_back(X);
  }
  return out;
}

double critical_time(const OdeSeries& series) {
  if (series.crossing) return *series.crossing;
  for (std::size_t i = 0; i < series.X.size(); ++i) {
    if (series.X[i] <= 0.25) {
      if (i == 0) throw std::runtime_error("series starts below 1/4: no crossing");
      const double x0 = series.X[i - 1], x1 = series.X[i];
      const double a = (x0 - 0.25) / (x0 - x1);
      return series.t[i - 1] + a * (series.t[i] - series.t[i - 1]);
    }
  }
  throw std::runtime_error("no crossing of X = 1/4 within the series");
}

Bracket critical_time_bracket(double eps, double s) {
  const double a = -2.0 * s * std::log(eps) + std::log(4.0);
  return {a / 6.0, 4.0 * a};
}

Bracket critical_time_bracket_minus(double eps, double s) {
  const double a = -2.0 * s * std::log(eps) - std::log(4.0);
  return {a / 6.0, 4.0 * a};
}

SandwichReport check_sandwich(const OdeSeries& series, double t_star, double rel_tol) {
  SandwichReport r;
  r.t_star = t_star;
  const double X0 = std::pow(series.eps, -2.0 * series.s);
  const double e2s = std::pow(series.eps, 2.0 * series.s);
  auto below = [rel_tol](double a, double b) { return a <= b * (1.0 + rel_tol) + 1e-300; };
  for (std::size_t i = 0; i < series.t.size(); ++i) {
    const double t = series.t[i], X = series.X[i];
    ++r.records;
    if (t <= t_star) {
      if (!below(X0 * std::exp(-6.0 * t), X) || !below(X, X0 * std::exp(-0.25 * t))) ++r.exp_violations;
    }
    if (t >= t_star) {
      const double d = t - t_star;
      if (!below(1.0 / (4.0 + 3.0 * d), X) || !below(X, 1.0 / (4.0 + d))) ++r.poly_violations;
    }
    const double Y = e2s * X;
    double lo, hi;
    if (t <= t_star) {
      lo = std::exp(-6.0 * t);
      hi = std::exp(-0.25 * t);
    } else {
      lo = e2s / (4.0 + 3.0 * (t - t_star));
      hi = e2s / (4.0 + (t - t_star));
    }
    if (!below(lo, Y) || !below(Y, hi)) ++r.combined_violations;
  }
  return r;
}

OdeState make_state(double Y, const OdeParams& pr, SplitPolicy policy) {
  if (Y < 0.0) throw std::domain_error("Y must be nonnegative");
  OdeState st;
  st.Y = Y;
  st.params = pr;
  st.policy = policy;
  switch (policy) {
    case SplitPolicy::AllLow:
      st.Y1 = Y;
      st.Y2 = 0.0;
      break;
    case SplitPolicy::AllHigh:
      st.Y1 = 0.0;
      st.Y2 = Y;
      break;
    case SplitPolicy::Balance: {
      // c1 Y1 = c2 eps^{-2s} Y2^{1+1/p}, Y1 + Y2 = Y.
      const double a = pr.c2 / pr.c1 * std::pow(pr.eps, -2.0 * pr.s);
      double y2;
      if (pr.p == 1.0) {
        y2 = 2.0 * Y / (1.0 + std::sqrt(1.0 + 4.0 * a * Y));
      } else {
        double lo = 0.0, hi = Y;
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (lo + hi);
          (mid + a * std::pow(mid, 1.0 + 1.0 / pr.p) < Y ? lo : hi) = mid;
        }
        y2 = 0.5 * (lo + hi);
      }
      st.Y2 = y2;
      st.Y1 = Y - y2;
      break;
    }
  }
  return st;
}

namespace {
double general_rhs(double Y, const OdeParams& pr, SplitPolicy policy) {
  const OdeState st = make_state(std::max(Y, 0.0), pr, policy);
  return -(pr.c1 * st.Y1 + pr.c2 * std::pow(pr.eps, -2.0 * pr.s) * std::pow(st.Y2, 1.0 + 1.0 / pr.p));
}
}  // namespace

GeneralSeries integrate_general(const OdeParams& pr, SplitPolicy policy, double Y0, double T, double dt) {
  if (!(pr.c1 > 0.0 && pr.c2 > 0.0 && pr.p > 0.0)) throw std::invalid_argument("need c1, c2, p > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("need dt > 0");
  GeneralSeries out;
  double Y = Y0;
  auto record = [&](double t) {
    const OdeState st = make_state(Y, pr, policy);
    out.t.push_back(t);
    out.Y.push_back(st.Y);
    out.Y1.push_back(st.Y1);
    out.Y2.push_back(st.Y2);
  };
  record(0.0);
  const auto nsteps = static_cast<long long>(std::llround(T / dt));
  for (long long n = 1; n <= nsteps; ++n) {
    const double k1 = general_rhs(Y, pr, policy);
    const double k2 = general_rhs(Y + 0.5 * dt * k1, pr, policy);
    const double k3 = general_rhs(Y + 0.5 * dt * k2, pr, policy);
    const double k4 = general_rhs(Y + dt * k3, pr, policy);
    Y = std::max(0.0, Y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    record(n * dt);
  }
  return out;
}

double all_high_closed_form(const OdeParams& pr, double Y0, double t) {
  return std::pow(std::pow(Y0, -1.0 / pr.p) + pr.c2 / pr.p * std::pow(pr.eps, -2.0 * pr.s) * t, -pr.p);
}

}  // namespace boltzgap
