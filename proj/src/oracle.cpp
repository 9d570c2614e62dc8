#include "slenderquad/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace slenderquad {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

double magnitude(double v) { return std::abs(v); }
double magnitude(const Vec3& v) { return v.cwiseAbs().maxCoeff(); }

template <typename T>
T zero_of() {
  if constexpr (std::is_same_v<T, double>)
    return 0.0;
  else
    return Vec3::Zero();
}

template <typename T>
struct Segment {
  double a, b;
  T value;
  double error;
  int depth;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename T>
Segment<T> kronrod(const std::function<T(double)>& f, double a, double b, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kron = kWgk[7] * fc;
  T gauss = kWg[3] * fc;
  double absolute = kWgk[7] * magnitude(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const T f1 = f(center - dx);
    const T f2 = f(center + dx);
    kron += kWgk[j] * (f1 + f2);
    absolute += kWgk[j] * (magnitude(f1) + magnitude(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  double err = magnitude(T(half * (kron - gauss)));
  // Below this level the estimate is rounding noise, not truncation.
  const double noise = 50.0 * std::numeric_limits<double>::epsilon() * std::abs(half) * absolute;
  if (err < noise) err = 0.0;
  return {a, b, T(half * kron), err, depth};
}

template <typename T>
T integrate(const std::function<T(double)>& f, double a, double b, double tol, const AdaptiveOptions& opts,
            double& error_out, bool& ok) {
  std::priority_queue<Segment<T>> heap;
  auto first = kronrod(f, a, b, 0);
  heap.push(first);
  T total = first.value;
  double err = first.error;
  int intervals = 1;
  ok = true;
  while (err > tol * std::max(1.0, magnitude(total))) {
    const Segment<T> worst = heap.top();
    if (worst.depth >= opts.max_depth || intervals >= opts.max_intervals) {
      ok = false;
      break;
    }
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = kronrod(f, worst.a, mid, worst.depth + 1);
    auto right = kronrod(f, mid, worst.b, worst.depth + 1);
    total = T(total - worst.value + left.value + right.value);
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum to shed drift from the running updates.
  T sum = zero_of<T>();
  double esum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    esum += heap.top().error;
    heap.pop();
  }
  error_out = esum;
  return sum;
}

Vec3 local_operator(const Vec3& t, const Vec3& f) { return f + t * t.dot(f); }

constexpr double kFinitePartWindow = 2e-5;

}  // namespace

double adaptive_integrate(const std::function<double(double)>& integrand, double a, double b, double tol,
                          const AdaptiveOptions& opts) {
  if (!(a < b)) throw std::invalid_argument("adaptive_integrate: requires a < b");
  double err = 0.0;
  bool ok = true;
  const double v = integrate<double>(integrand, a, b, tol, opts, err, ok);
  if (!ok) throw AccuracyFailure("adaptive_integrate: tolerance not met", v, err);
  return v;
}

Vec3 adaptive_integrate(const std::function<Vec3(double)>& integrand, double a, double b, double tol,
                        const AdaptiveOptions& opts) {
  if (!(a < b)) throw std::invalid_argument("adaptive_integrate: requires a < b");
  double err = 0.0;
  bool ok = true;
  const Vec3 v = integrate<Vec3>(integrand, a, b, tol, opts, err, ok);
  if (!ok) throw VectorAccuracyFailure("adaptive_integrate: tolerance not met", v, err);
  return v;
}

double legendre_lambda(int n) {
  double lambda = 0.0;
  for (int k = 1; k <= n; ++k) lambda += 2.0 / k;
  return lambda;
}

double shifted_legendre(int n, double s, double length) {
  const double x = -1.0 + 2.0 * s / length;
  double p0 = 1.0, p1 = x;
  if (n == 0) return 1.0;
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

ScalarField legendre_series(const std::vector<double>& alphas, double length) {
  auto value = [alphas, length](double s) {
    double acc = 0.0;
    for (std::size_t n = 0; n < alphas.size(); ++n) acc += alphas[n] * shifted_legendre(static_cast<int>(n), s, length);
    return acc;
  };
  auto derivative = [alphas, length](double s) {
    // P_n' = sum over k = n-1, n-3, ... of (2k + 1) P_k
    double acc = 0.0;
    for (std::size_t n = 1; n < alphas.size(); ++n) {
      double dp = 0.0;
      for (int k = static_cast<int>(n) - 1; k >= 0; k -= 2) dp += (2.0 * k + 1.0) * shifted_legendre(k, s, length);
      acc += alphas[n] * dp * 2.0 / length;
    }
    return acc;
  };
  return {value, derivative};
}

double diagonalization_L(const std::vector<double>& alphas, double length, double s_bar) {
  double acc = 0.0;
  for (std::size_t n = 0; n < alphas.size(); ++n)
    acc -= alphas[n] * legendre_lambda(static_cast<int>(n)) * shifted_legendre(static_cast<int>(n), s_bar, length);
  return acc;
}

double reference_L(const ScalarField& f, double length, double s_bar, double tol) {
  if (!(s_bar > 0.0 && s_bar < length)) throw std::invalid_argument("reference_L: s_bar must lie in (0, L)");
  const double f_bar = f.value(s_bar);
  const double df_bar = f.derivative(s_bar);
  auto integrand = [&](double s) {
    const double d = s - s_bar;
    if (std::abs(d) < 1e-14) return d < 0.0 ? -df_bar : df_bar;
    return (f.value(s) - f_bar) / std::abs(d);
  };
  return adaptive_integrate(integrand, 0.0, s_bar, tol) + adaptive_integrate(integrand, s_bar, length, tol);
}

Vec3 reference_K(const FiberCurve& curve, const VectorField& f, double s_bar, double tol) {
  const double length = curve.length();
  if (!(s_bar > 0.0 && s_bar < length)) throw std::invalid_argument("reference_K: s_bar must lie in (0, L)");
  const Vec3 x_bar = curve.position(s_bar);
  const Vec3 t_bar = curve.tangent(s_bar);
  const Vec3 xss_bar = curve.second_derivative(s_bar);
  const Vec3 f_bar = f.value(s_bar);
  const Vec3 local = local_operator(t_bar, f_bar);
  const Vec3 df_bar = f.derivative(s_bar);
  const Vec3 limit = 0.5 * (t_bar * xss_bar.dot(f_bar) + xss_bar * t_bar.dot(f_bar)) + df_bar + t_bar * t_bar.dot(df_bar);

  auto integrand = [&](double s) -> Vec3 {
    const Vec3 r = curve.position(s) - x_bar;
    const double rlen = r.norm();
    const Vec3 rhat = r / rlen;
    const Vec3 fs = f.value(s);
    return (fs + rhat * rhat.dot(fs)) / rlen - local / std::abs(s - s_bar);
  };
  // Both terms grow like 1/|s - s_bar| and their difference loses about
  // eps |x| / |s - s_bar|^2, so the innermost window is a trapezoid between
  // the one-sided limits and the integrand at its edge.
  const double window = std::min({kFinitePartWindow * length, 0.5 * s_bar, 0.5 * (length - s_bar)});
  const Vec3 left_patch = 0.5 * window * (integrand(s_bar - window) - limit);
  const Vec3 right_patch = 0.5 * window * (integrand(s_bar + window) + limit);
  return adaptive_integrate(integrand, 0.0, s_bar - window, tol) + left_patch + right_patch +
         adaptive_integrate(integrand, s_bar + window, length, tol);
}

double closest_arclength(const FiberCurve& curve, const Vec3& x_bar) {
  const double length = curve.length();
  constexpr int samples = 4000;
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) {
    const double d = (curve.position(length * i / samples) - x_bar).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  // Golden-section refinement on the bracketing sample interval.
  double lo = length * std::max(best - 1, 0) / samples;
  double hi = length * std::min(best + 1, samples) / samples;
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  auto dist = [&](double s) { return (curve.position(s) - x_bar).squaredNorm(); };
  double c = hi - ratio * (hi - lo);
  double d = lo + ratio * (hi - lo);
  double fc = dist(c), fd = dist(d);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * length; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - ratio * (hi - lo);
      fc = dist(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + ratio * (hi - lo);
      fd = dist(d);
    }
  }
  return 0.5 * (lo + hi);
}

Vec3 reference_S(const FiberCurve& curve, const VectorField& f, const Vec3& x_bar, double tol, bool split_at_closest) {
  auto integrand = [&](double s) -> Vec3 {
    const Vec3 r = x_bar - curve.position(s);
    const double r2 = r.squaredNorm();
    if (r2 == 0.0) throw DivisionByZero("reference_S: field point on the centerline");
    const double inv = 1.0 / std::sqrt(r2);
    const Vec3 fs = f.value(s);
    return inv * fs + (r.dot(fs) * inv * inv * inv) * r;
  };
  const double length = curve.length();
  if (!split_at_closest) return adaptive_integrate(integrand, 0.0, length, tol);
  const double split = closest_arclength(curve, x_bar);
  Vec3 acc = Vec3::Zero();
  if (split > 0.0) acc += adaptive_integrate(integrand, 0.0, split, tol);
  if (split < length) acc += adaptive_integrate(integrand, split, length, tol);
  return acc;
}

std::vector<Vec3> K_on_uniform_grid(const FiberCurve& curve, const VectorField& f, int panels, int uniform_count,
                                    int rule_order) {
  const auto rule = gauss_legendre(rule_order);
  const auto discrete = discretize(curve, panels, rule);
  const LineDensity density(f, discrete.grid);
  const auto table = build_weight_table(rule);
  const auto k = apply_K(discrete, density, table);

  std::vector<double> targets(uniform_count + 1);
  for (int l = 0; l <= uniform_count; ++l) targets[l] = l * curve.length() / uniform_count;
  targets.back() = curve.length();

  std::vector<Vec3> out(targets.size(), Vec3::Zero());
  std::vector<double> component(k.size());
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < k.size(); ++i) component[i] = k[i][c];
    const auto values = interpolate_to_uniform(component, discrete.grid, targets);
    for (std::size_t l = 0; l < values.size(); ++l) out[l][c] = values[l];
  }
  return out;
}

ErrorGrid convergence_study(const FiberCurve& curve, const VectorField& f, const std::vector<int>& panel_list,
                            int reference_panels, int uniform_count, int rule_order) {
  for (int m : panel_list)
    if (m > reference_panels) throw std::invalid_argument("convergence_study: reference must use the most panels");
  ErrorGrid grid;
  grid.uniform_count = uniform_count;
  grid.reference_panels = reference_panels;
  const auto reference = K_on_uniform_grid(curve, f, reference_panels, uniform_count, rule_order);
  for (int m : panel_list) {
    const auto approx = K_on_uniform_grid(curve, f, m, uniform_count, rule_order);
    double e = 0.0;
    for (std::size_t l = 0; l < approx.size(); ++l) e = std::max(e, (approx[l] - reference[l]).norm());
    grid.panels.push_back(m);
    grid.errors.push_back(e);
  }
  return grid;
}

}  // namespace slenderquad
