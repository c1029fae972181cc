#include "fuzzy/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "fuzzy/quadrature.hpp"

namespace fuzzy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s, std::size_t line) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::InvalidSpec, "bad number '" + std::string(s) + "' on line " + std::to_string(line));
  return v;
}

}  // namespace

const char* to_string(DistKind kind) {
  switch (kind) {
    case DistKind::delta: return "delta";
    case DistKind::lorentzian: return "lorentzian";
    case DistKind::uniform: return "uniform";
    case DistKind::gaussian: return "gaussian";
    case DistKind::tabulated: return "tabulated";
  }
  return "unknown";
}

DistKind parse_dist_kind(std::string_view name) {
  for (DistKind k : {DistKind::delta, DistKind::lorentzian, DistKind::uniform, DistKind::gaussian,
                     DistKind::tabulated})
    if (name == to_string(k)) return k;
  throw Error(ErrorCode::InvalidSpec, "unknown distribution kind '" + std::string(name) + "'");
}

DistributionSpec::DistributionSpec(DistKind kind, double zeta, std::vector<TablePoint> table)
    : kind_(kind), zeta_(zeta), table_(std::move(table)) {
  validate();
}

void DistributionSpec::validate() const {
  if (!std::isfinite(zeta_) || zeta_ < 0.0) throw Error(ErrorCode::InvalidSpec, "zeta must be finite and >= 0");
  if (kind_ == DistKind::delta) {
    if (zeta_ != 0.0) throw Error(ErrorCode::InvalidSpec, "delta kind requires zeta = 0");
    return;
  }
  if (zeta_ == 0.0) throw Error(ErrorCode::InvalidSpec, std::string(to_string(kind_)) + " requires zeta > 0");
  if (kind_ == DistKind::tabulated) {
    if (table_.size() < 2) throw Error(ErrorCode::InvalidSpec, "table needs at least two rows");
    for (std::size_t i = 0; i < table_.size(); ++i) {
      if (!std::isfinite(table_[i].x) || !std::isfinite(table_[i].density) || table_[i].density < 0.0)
        throw Error(ErrorCode::InvalidSpec, "table densities must be finite and >= 0");
      if (i > 0 && !(table_[i].x > table_[i - 1].x))
        throw Error(ErrorCode::InvalidSpec, "table x values must be strictly increasing");
    }
  }
}

DistributionSpec DistributionSpec::delta() { return {DistKind::delta, 0.0}; }
DistributionSpec DistributionSpec::lorentzian(double zeta) { return {DistKind::lorentzian, zeta}; }
DistributionSpec DistributionSpec::uniform(double zeta) { return {DistKind::uniform, zeta}; }
DistributionSpec DistributionSpec::gaussian(double sigma) { return {DistKind::gaussian, sigma}; }

DistributionSpec DistributionSpec::tabulated(std::vector<TablePoint> table) {
  double half_width = 0.0;
  if (!table.empty()) half_width = std::max(std::abs(table.front().x), std::abs(table.back().x));
  return {DistKind::tabulated, half_width, std::move(table)};
}

DistributionSpec DistributionSpec::from_width(DistKind kind, double gamma, double omega) {
  if (!(omega > 0.0)) throw Error(ErrorCode::NonPositiveOmega, "omega must be > 0");
  return make(kind, gamma / (2.0 * omega));
}

DistributionSpec DistributionSpec::make(DistKind kind, double zeta) {
  if (kind == DistKind::tabulated) throw Error(ErrorCode::InvalidSpec, "tabulated kind needs a table");
  return {kind, zeta};
}

std::pair<double, double> DistributionSpec::support() const {
  switch (kind_) {
    case DistKind::delta: return {0.0, 0.0};
    case DistKind::uniform: return {-zeta_, zeta_};
    case DistKind::tabulated: return {table_.front().x, table_.back().x};
    default: return {-kInf, kInf};
  }
}

std::vector<double> DistributionSpec::breakpoints() const {
  std::vector<double> pts;
  switch (kind_) {
    case DistKind::delta: return {0.0};
    case DistKind::lorentzian:
      for (double m : {1.0, 4.0, 20.0, 100.0}) {
        pts.push_back(-m * zeta_);
        pts.push_back(m * zeta_);
      }
      break;
    case DistKind::gaussian:
      for (double m : {1.0, 3.0, 8.0}) {
        pts.push_back(-m * zeta_);
        pts.push_back(m * zeta_);
      }
      break;
    case DistKind::uniform:
      pts = {-zeta_, zeta_};
      break;
    case DistKind::tabulated:
      for (const auto& p : table_) pts.push_back(p.x);
      break;
  }
  const auto [lo, hi] = support();
  if (lo < 0.0 && hi > 0.0) pts.push_back(0.0);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double density(const DistributionSpec& spec, double x) {
  const double z = spec.zeta();
  switch (spec.kind()) {
    case DistKind::delta:
      throw Error(ErrorCode::DeltaHasNoDensity, "delta distribution has no pointwise density");
    case DistKind::lorentzian:
      return z / (std::numbers::pi * (x * x + z * z));
    case DistKind::uniform:
      return (x >= -z && x <= z) ? 1.0 / (2.0 * z) : 0.0;
    case DistKind::gaussian: {
      const double r = x / z;
      return std::exp(-0.5 * r * r) / (z * std::sqrt(2.0 * std::numbers::pi));
    }
    case DistKind::tabulated: {
      const auto& t = spec.table();
      if (x < t.front().x || x > t.back().x) return 0.0;
      auto it = std::upper_bound(t.begin(), t.end(), x, [](double v, const TablePoint& p) { return v < p.x; });
      if (it == t.end()) return t.back().density;
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      const double w = (x - lo.x) / (hi.x - lo.x);
      return lo.density + w * (hi.density - lo.density);
    }
  }
  return 0.0;
}

double shifted_integrand(const DistributionSpec& spec, int k, double x) {
  if (k != 0 && k != 1) throw Error(ErrorCode::InvalidSpec, "k must be 0 or 1");
  const double f = density(spec, x - 1.0);
  return k == 0 ? f : (x - 1.0) * f;
}

double normalization_residual(const DistributionSpec& spec) {
  if (spec.kind() == DistKind::delta)
    throw Error(ErrorCode::DeltaHasNoDensity, "delta distribution has no pointwise density");
  const auto f = [&spec](double x) { return density(spec, x); };
  const auto [lo, hi] = spec.support();
  const auto pts = spec.breakpoints();
  quad::Options opt;
  opt.rel_tol = 1e-13;
  opt.abs_tol = 1e-15;
  double total = 0.0;
  bool ok = true;
  if (std::isfinite(lo) && std::isfinite(hi)) {
    const auto r = quad::adaptive(f, pts, opt);
    total = r.value;
    ok = r.converged;
  } else {
    // split at the median breakpoint and fold the left half onto [.., inf)
    const double mid = 0.0;
    std::vector<double> right, left;
    for (double p : pts) {
      if (p > mid) right.push_back(p);
      if (p < mid) left.push_back(-p);
    }
    const auto r = quad::adaptive_to_infinity(f, mid, right, opt);
    const auto l = quad::adaptive_to_infinity([&f](double t) { return f(-t); }, -mid, left, opt);
    total = r.value + l.value;
    ok = r.converged && l.converged;
  }
  if (!ok) throw Error(ErrorCode::QuadratureNonConvergence, "normalization integral did not converge");
  return std::abs(total - 1.0);
}

bool looks_symmetric(const DistributionSpec& spec, double tol) {
  if (spec.kind() != DistKind::tabulated) return true;
  const auto& t = spec.table();
  double peak = 0.0;
  for (const auto& p : t) peak = std::max(peak, p.density);
  for (const auto& p : t)
    if (std::abs(density(spec, p.x) - density(spec, -p.x)) > tol * std::max(peak, 1.0)) return false;
  return true;
}

std::vector<TablePoint> parse_table_csv(std::string_view text) {
  std::vector<TablePoint> rows;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
      throw Error(ErrorCode::InvalidSpec, "expected two columns on line " + std::to_string(line_no));
    if (!header_seen) {
      // canonical header is `x,f`; any two-column header of names is accepted
      // so that other two-column exports (xi,density / omega,energy) re-ingest
      const auto first = trim(line.substr(0, comma));
      double probe = 0.0;
      const auto [ptr, ec] = std::from_chars(first.data(), first.data() + first.size(), probe);
      if (first.empty() || (ec == std::errc() && ptr == first.data() + first.size()))
        throw Error(ErrorCode::InvalidSpec, "table CSV must start with a header row such as 'x,f'");
      header_seen = true;
      continue;
    }
    rows.push_back({parse_double(line.substr(0, comma), line_no), parse_double(line.substr(comma + 1), line_no)});
  }
  if (!header_seen) throw Error(ErrorCode::InvalidSpec, "table CSV is empty");
  return rows;
}

std::vector<TablePoint> read_table_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open table '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_table_csv(buf.str());
}

}  // namespace fuzzy
