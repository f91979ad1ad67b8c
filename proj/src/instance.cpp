#include "polyproj/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "polyproj/rng.hpp"

namespace polyproj {

namespace {

constexpr double kSpectralTol = 1e-12;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Ellipsoid make_ellipsoid(std::size_t n, std::uint64_t seed, std::size_t index, const GeneratorParams& p) {
  CounterRng rng(seed, index + 1);
  const auto rows = static_cast<Eigen::Index>(n);
  const auto cols = static_cast<Eigen::Index>(p.factor_cols ? p.factor_cols : n);

  Matrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = rng.uniform(-p.a_range, p.a_range);
  }
  const double lambda = rng.uniform(p.lambda_lo, p.lambda_hi);
  Vector center(rows);
  for (Eigen::Index i = 0; i < rows; ++i) center[i] = rng.uniform(-p.center_range, p.center_range);

  Matrix q = a * a.transpose();
  q.diagonal().array() += lambda;
  q.triangularView<Eigen::StrictlyLower>() = q.transpose();

  // Power iteration converges from below; inflate by its tolerance so eta
  // bounds the true spectral norm.
  const double q_norm = spectral_norm(q, kSpectralTol) * (1.0 + 2.0 * kSpectralTol);
  const double radius = p.margin * (1.0 + center.norm()) * std::sqrt(q_norm);
  return Ellipsoid(std::move(center), SpdMatrix(std::move(q)), radius);
}

bool outside_every_set(const std::vector<Ellipsoid>& sets, const Vector& x) {
  return std::all_of(sets.begin(), sets.end(), [&](const Ellipsoid& e) { return gauge(e, x).value > 0.0; });
}

// ---- text format -----------------------------------------------------------

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  /// Next non-empty, non-comment line split into tokens; empty at EOF.
  std::vector<std::string_view> line() {
    while (pos_ < text_.size()) {
      auto end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view raw = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++line_no_;
      std::vector<std::string_view> tokens;
      std::size_t i = 0;
      while (i < raw.size()) {
        while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
        std::size_t j = i;
        while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
        if (j > i) tokens.push_back(raw.substr(i, j - i));
        i = j;
      }
      if (!tokens.empty() && tokens[0].front() != '#') return tokens;
    }
    return {};
  }

  std::vector<std::string_view> expect(std::string_view key, std::size_t values) {
    auto tokens = line();
    if (tokens.empty() || tokens[0] != key || tokens.size() != values + 1) {
      fail("expected '" + std::string(key) + "' with " + std::to_string(values) + " value(s)");
    }
    return tokens;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::ValidationError, "instance line " + std::to_string(line_no_) + ": " + msg);
  }

  double number(std::string_view token) const {
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
      fail("bad number '" + std::string(token) + "'");
    }
    return v;
  }

  template <class Int>
  Int integer(std::string_view token) const {
    Int v{};
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
      fail("bad integer '" + std::string(token) + "'");
    }
    return v;
  }

  Vector vector(std::string_view key, std::size_t n) {
    auto tokens = expect(key, n);
    Vector v(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) v[static_cast<Eigen::Index>(i)] = number(tokens[i + 1]);
    return v;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

void write_vector(std::ostream& os, std::string_view key, const Vector& v) {
  os << key;
  for (Eigen::Index i = 0; i < v.size(); ++i) os << ' ' << format_double(v[i]);
  os << '\n';
}

}  // namespace

std::vector<ConvexSet> Instance::sets() const {
  return {ellipsoids.begin(), ellipsoids.end()};
}

Instance generate(std::size_t m, std::size_t n, std::uint64_t seed, const GeneratorParams& params) {
  if (m < 1 || n < 1) throw Error(Errc::InvalidArgument, "instance needs m >= 1 and n >= 1");
  if (!(params.lambda_lo > 0.0) || params.lambda_hi < params.lambda_lo || !(params.margin >= 1.0)) {
    throw Error(Errc::InvalidArgument, "generator needs 0 < lambda_lo <= lambda_hi and margin >= 1");
  }

  Instance inst;
  inst.m = m;
  inst.n = n;
  inst.seed = seed;
  inst.params = params;
  inst.ellipsoids.reserve(m);
  for (std::size_t i = 0; i < m; ++i) inst.ellipsoids.push_back(make_ellipsoid(n, seed, i, params));

  double max_radius = 0.0;
  double min_eig = std::numeric_limits<double>::infinity();
  for (const auto& e : inst.ellipsoids) {
    max_radius = std::max(max_radius, e.radius());
    min_eig = std::min(min_eig, e.eigenvalues()[0]);
  }
  const double sphere = params.x0_radius_factor * max_radius / std::sqrt(min_eig);

  CounterRng rng(seed, 0);
  const auto dim = static_cast<Eigen::Index>(n);
  for (int attempt = 0; attempt < params.x0_attempts; ++attempt) {
    Vector dir(dim);
    for (Eigen::Index i = 0; i < dim; ++i) dir[i] = rng.normal();
    const double norm = dir.norm();
    if (norm == 0.0) continue;
    Vector x0 = (sphere / norm) * dir;
    if (outside_every_set(inst.ellipsoids, x0)) {
      inst.x0 = std::move(x0);
      return inst;
    }
  }

  // Radially outside the first ellipsoid along e_1: (s e_1)^T Q (s e_1) = 4 eta^2.
  const Ellipsoid& first = inst.ellipsoids.front();
  Vector x0 = first.center();
  x0[0] += 2.0 * first.radius() / std::sqrt(first.shape().matrix()(0, 0));
  inst.x0 = std::move(x0);
  inst.x0_fallback = true;
  return inst;
}

std::string serialize(const Instance& inst) {
  std::ostringstream os;
  const auto& p = inst.params;
  os << "# polyproj ellipsoid-intersection instance\n";
  os << "format polyproj-instance\n";
  os << "version " << kInstanceFormatVersion << '\n';
  os << "m " << inst.m << '\n';
  os << "n " << inst.n << '\n';
  os << "seed " << inst.seed << '\n';
  os << "factor_cols " << p.factor_cols << '\n';
  os << "a_range " << format_double(p.a_range) << '\n';
  os << "lambda_range " << format_double(p.lambda_lo) << ' ' << format_double(p.lambda_hi) << '\n';
  os << "center_range " << format_double(p.center_range) << '\n';
  os << "margin " << format_double(p.margin) << '\n';
  os << "x0_radius_factor " << format_double(p.x0_radius_factor) << '\n';
  os << "x0_fallback " << (inst.x0_fallback ? 1 : 0) << '\n';
  write_vector(os, "x0", inst.x0);
  for (std::size_t i = 0; i < inst.ellipsoids.size(); ++i) {
    const auto& e = inst.ellipsoids[i];
    os << "ellipsoid " << i << '\n';
    os << "radius " << format_double(e.radius()) << '\n';
    write_vector(os, "center", e.center());
    const Matrix& q = e.shape().matrix();
    for (Eigen::Index r = 0; r < q.rows(); ++r) write_vector(os, "row", q.row(r).transpose());
  }
  os << "end\n";
  return os.str();
}

Instance parse(std::string_view text) {
  Reader in(text);
  if (auto t = in.expect("format", 1); t[1] != "polyproj-instance") in.fail("not a polyproj instance");
  {
    auto t = in.expect("version", 1);
    if (t[1] != std::to_string(kInstanceFormatVersion)) {
      throw Error(Errc::SchemaVersionMismatch,
                  "instance version '" + std::string(t[1]) + "', expected " + std::to_string(kInstanceFormatVersion));
    }
  }
  Instance inst;
  inst.m = in.integer<std::size_t>(in.expect("m", 1)[1]);
  inst.n = in.integer<std::size_t>(in.expect("n", 1)[1]);
  if (inst.m < 1 || inst.n < 1) in.fail("m and n must be positive");
  inst.seed = in.integer<std::uint64_t>(in.expect("seed", 1)[1]);
  auto& p = inst.params;
  p.factor_cols = in.integer<std::size_t>(in.expect("factor_cols", 1)[1]);
  p.a_range = in.number(in.expect("a_range", 1)[1]);
  {
    auto t = in.expect("lambda_range", 2);
    p.lambda_lo = in.number(t[1]);
    p.lambda_hi = in.number(t[2]);
  }
  p.center_range = in.number(in.expect("center_range", 1)[1]);
  p.margin = in.number(in.expect("margin", 1)[1]);
  p.x0_radius_factor = in.number(in.expect("x0_radius_factor", 1)[1]);
  inst.x0_fallback = in.integer<int>(in.expect("x0_fallback", 1)[1]) != 0;
  inst.x0 = in.vector("x0", inst.n);
  require_finite(inst.x0, "x0");

  const auto n = static_cast<Eigen::Index>(inst.n);
  for (std::size_t i = 0; i < inst.m; ++i) {
    if (in.integer<std::size_t>(in.expect("ellipsoid", 1)[1]) != i) in.fail("ellipsoids out of order");
    const double radius = in.number(in.expect("radius", 1)[1]);
    if (!(radius > 0.0) || !std::isfinite(radius)) in.fail("ellipsoid radius must be positive");
    Vector center = in.vector("center", inst.n);
    Matrix q(n, n);
    for (Eigen::Index r = 0; r < n; ++r) q.row(r) = in.vector("row", inst.n).transpose();
    inst.ellipsoids.emplace_back(std::move(center), SpdMatrix(std::move(q)), radius);
  }
  if (auto t = in.line(); t.size() != 1 || t[0] != "end") in.fail("expected 'end'");
  return inst;
}

void save(const Instance& instance, const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot open '" + path.string() + "' for writing");
  out << serialize(instance);
  if (!out.flush()) throw Error(Errc::IoError, "failed writing '" + path.string() + "'");
}

Instance load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace polyproj
