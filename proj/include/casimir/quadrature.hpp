#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace casimir {

/// Neumaier-compensated running sum; the result depends only on the order of add() calls.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  int intervals = 0;
  bool converged = false;
};

namespace detail {

// QUADPACK QK21 abscissae and weights. Odd indices of kXgk are the 10-point Gauss nodes.
inline constexpr double kXgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr double kWgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr double kWg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double lo, hi, value, error;
};

template <class F>
Segment gk21(F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kWgk[10];
  double gauss = 0.0;
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  // plain |K - G|, no QUADPACK rescaling
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Global adaptive Gauss-Kronrod (10/21) integration of f over [lo, hi].
///
/// Stops once the summed error estimate is below max(abs_tol, rel_tol |I|)
/// or after max_subdivisions bisections (converged = false). Deterministic:
/// the final value is a compensated sum over segments ordered by position.
template <class F>
QuadratureResult integrate(F&& f, double lo, double hi, double rel_tol, double abs_tol,
                           int max_subdivisions = 1000) {
  QuadratureResult out;
  if (lo == hi) {
    out.converged = true;
    return out;
  }
  auto by_error = [](const detail::Segment& a, const detail::Segment& b) {
    if (a.error != b.error) return a.error < b.error;
    return a.lo > b.lo;
  };
  std::priority_queue<detail::Segment, std::vector<detail::Segment>, decltype(by_error)> heap(by_error);
  auto first = detail::gk21(f, lo, hi);
  double total = first.value;
  double total_err = first.error;
  heap.push(first);
  int evals = 21;
  int splits = 0;

  auto tolerance = [&] { return std::max(abs_tol, rel_tol * std::abs(total)); };
  while (total_err > tolerance() && splits < max_subdivisions) {
    auto worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;  // interval at machine resolution
    heap.pop();
    auto left = detail::gk21(f, worst.lo, mid);
    auto right = detail::gk21(f, mid, worst.hi);
    evals += 42;
    ++splits;
    total += (left.value + right.value) - worst.value;
    total_err += (left.error + right.error) - worst.error;
    heap.push(left);
    heap.push(right);
  }

  std::vector<detail::Segment> segs;
  segs.reserve(heap.size());
  while (!heap.empty()) {
    segs.push_back(heap.top());
    heap.pop();
  }
  std::sort(segs.begin(), segs.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  CompensatedSum value, err;
  for (const auto& s : segs) {
    value.add(s.value);
    err.add(s.error);
  }
  out.value = value.value();
  out.error = err.value();
  out.evaluations = evals;
  out.intervals = static_cast<int>(segs.size());
  out.converged = out.error <= std::max(abs_tol, rel_tol * std::abs(out.value));
  return out;
}

}  // namespace casimir
