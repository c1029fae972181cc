#include "fuzzy/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include "fuzzy/core.hpp"

namespace fuzzy::quad {

namespace {

// Kronrod abscissae; odd indices are the 7-point Gauss nodes.
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

struct Segment {
  double a, b;
  Result r;
  bool operator<(const Segment& o) const { return r.abs_error < o.r.abs_error; }
};

}  // namespace

Result gauss_kronrod15(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double mean = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  Result out;
  out.value = resk * half;
  resasc *= std::abs(half);
  resabs *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50 * eps)) err = std::max(50 * eps * resabs, err);
  out.abs_error = err;
  out.evaluations = 15;
  out.intervals = 1;
  out.converged = true;
  return out;
}

Result adaptive(const Integrand& f, const std::vector<double>& edges, const Options& opt) {
  if (edges.size() < 2) throw Error(ErrorCode::InvalidGrid, "quadrature needs at least two edges");
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1]) || !std::isfinite(edges[i]) || !std::isfinite(edges[i - 1]))
      throw Error(ErrorCode::InvalidGrid, "quadrature edges must be finite and increasing");

  std::priority_queue<Segment> heap;
  Result total;
  for (std::size_t i = 1; i < edges.size(); ++i) {
    Segment s{edges[i - 1], edges[i], gauss_kronrod15(f, edges[i - 1], edges[i])};
    total.value += s.r.value;
    total.abs_error += s.r.abs_error;
    total.evaluations += s.r.evaluations;
    heap.push(s);
  }

  auto done = [&] { return total.abs_error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total.value)); };
  while (!done() && static_cast<int>(heap.size()) < opt.max_intervals) {
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // interval at machine resolution; keep it and give up refining
      heap.push(worst);
      break;
    }
    Segment left{worst.a, mid, gauss_kronrod15(f, worst.a, mid)};
    Segment right{mid, worst.b, gauss_kronrod15(f, mid, worst.b)};
    total.value += left.r.value + right.r.value - worst.r.value;
    total.abs_error += left.r.abs_error + right.r.abs_error - worst.r.abs_error;
    total.evaluations += 30;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the leaves to shed the drift of incremental updates.
  total.value = 0.0;
  total.abs_error = 0.0;
  std::vector<Segment> leaves;
  leaves.reserve(heap.size());
  while (!heap.empty()) {
    leaves.push_back(heap.top());
    heap.pop();
  }
  std::sort(leaves.begin(), leaves.end(), [](const Segment& l, const Segment& r) { return l.a < r.a; });
  for (const auto& s : leaves) {
    total.value += s.r.value;
    total.abs_error += s.r.abs_error;
  }
  total.intervals = static_cast<int>(leaves.size());
  total.converged = done();
  return total;
}

Result adaptive_to_infinity(const Integrand& f, double a, std::vector<double> edges, const Options& opt) {
  auto mapped = [&f, a](double s) {
    const double one_minus = 1.0 - s;
    const double t = a + s / one_minus;
    if (!std::isfinite(t)) return 0.0;
    return f(t) / (one_minus * one_minus);
  };
  std::vector<double> s_edges{0.0};
  std::sort(edges.begin(), edges.end());
  for (double t : edges) {
    if (!(t > a) || !std::isfinite(t)) continue;
    const double s = (t - a) / (1.0 + (t - a));
    if (s > s_edges.back() && s < 1.0) s_edges.push_back(s);
  }
  s_edges.push_back(1.0);
  return adaptive(mapped, s_edges, opt);
}

}  // namespace fuzzy::quad
