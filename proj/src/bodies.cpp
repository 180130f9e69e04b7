#include "bsl/bodies.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "bsl/util.hpp"

namespace bsl {

namespace {

constexpr int kMaxImageDepth = 32;

double dot(const double* x, const double* y, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += x[i] * y[i];
  return s;
}

double norm2(const double* x, int d) { return std::sqrt(dot(x, x, d)); }

// y = M x, M row-major d x d
void matvec(const std::vector<double>& m, const double* x, double* y, int d) {
  for (int r = 0; r < d; ++r) y[r] = dot(m.data() + std::size_t(r) * d, x, d);
}

// y = M^T x
void mat_t_vec(const std::vector<double>& m, const double* x, double* y,
               int d) {
  for (int c = 0; c < d; ++c) y[c] = 0.0;
  for (int r = 0; r < d; ++r) {
    const double* row = m.data() + std::size_t(r) * d;
    for (int c = 0; c < d; ++c) y[c] += row[c] * x[r];
  }
}

void check_axis_vector(const std::vector<double>& a) {
  if (a.size() < 2 || a.size() > std::size_t(kMaxAmbientDim))
    throw DegenerateInput("axis vector must have length 2.." +
                          std::to_string(kMaxAmbientDim));
  for (double v : a)
    if (!(v > 0.0) || !std::isfinite(v))
      throw DegenerateInput("axis lengths must be positive and finite");
}

bool is_zero(const double* z, int d) {
  if (z == nullptr) return true;
  for (int i = 0; i < d; ++i)
    if (z[i] != 0.0) return false;
  return true;
}

double radial_impl(const BodySpec& s, const double* z, const double* u,
                   int depth);
double support_impl(const BodySpec& s, const double* u, int depth);
double gauge_impl(const BodySpec& s, const double* x, int depth);

double radial_rhombus(const std::vector<double>& a, const double* z,
                      const double* u, int d) {
  if (is_zero(z, d)) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += std::abs(u[i]) / a[i];
    return 1.0 / s;
  }
  // facets are sign patterns: nu_s = (s_1/a_1, ..., s_d/a_d), offset 1
  double best = std::numeric_limits<double>::infinity();
  const unsigned patterns = 1u << d;
  for (unsigned bits = 0; bits < patterns; ++bits) {
    double den = 0.0, num = 1.0;
    for (int i = 0; i < d; ++i) {
      const double sign = (bits >> i) & 1u ? -1.0 : 1.0;
      den += sign * u[i] / a[i];
      num -= sign * z[i] / a[i];
    }
    if (den > 0.0) {
      if (num <= 0.0) throw CenterNotInterior();
      best = std::min(best, num / den);
    }
  }
  if (!std::isfinite(best))
    throw GeometryError("no facet faces the requested direction");
  return best;
}

double radial_box(const std::vector<double>& a, const double* z,
                  const double* u, int d) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < d; ++i) {
    if (u[i] == 0.0) continue;
    const double zi = z ? z[i] : 0.0;
    const double num = a[i] - (u[i] > 0.0 ? zi : -zi);
    if (num <= 0.0) throw CenterNotInterior();
    best = std::min(best, num / std::abs(u[i]));
  }
  if (!std::isfinite(best))
    throw GeometryError("zero direction has no radial value");
  return best;
}

double radial_ellipsoid(const std::vector<double>& a, const double* z,
                        const double* u, int d) {
  // positive root of sum (z_i + t u_i)^2 / a_i^2 = 1, in the stable form
  double qa = 0.0, qb = 0.0, qc = 1.0;
  for (int i = 0; i < d; ++i) {
    const double ui = u[i] / a[i];
    qa += ui * ui;
    if (z) {
      const double zi = z[i] / a[i];
      qb += zi * ui;
      qc -= zi * zi;
    }
  }
  if (qc <= 0.0) throw CenterNotInterior();
  const double disc = std::sqrt(qb * qb + qa * qc);
  if (qb > 0.0) return qc / (qb + disc);
  return (-qb + disc) / qa;
}

double radial_hpoly(const HPolytopeSym& p, const double* z, const double* u,
                    int d) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < p.normals.size(); ++j) {
    const double* nu = p.normals[j].data();
    const double nu_u = dot(nu, u, d);
    const double nu_z = z ? dot(nu, z, d) : 0.0;
    const double h = p.offsets[j];
    for (int sgn = 0; sgn < 2; ++sgn) {
      const double den = sgn ? -nu_u : nu_u;
      if (den <= 0.0) continue;
      const double num = h - (sgn ? -nu_z : nu_z);
      if (num <= 0.0) throw CenterNotInterior();
      best = std::min(best, num / den);
    }
  }
  if (!std::isfinite(best))
    throw GeometryError("no facet faces the requested direction");
  return best;
}

double radial_impl(const BodySpec& s, const double* z, const double* u,
                   int depth) {
  if (depth > kMaxImageDepth)
    throw GeometryError("linear image nesting too deep");
  const int d = s.dim;
  if (const auto* r = std::get_if<Rhombus>(&s.shape))
    return radial_rhombus(r->a, z, u, d);
  if (const auto* b = std::get_if<Box>(&s.shape))
    return radial_box(b->a, z, u, d);
  if (const auto* e = std::get_if<Ellipsoid>(&s.shape))
    return radial_ellipsoid(e->a, z, u, d);
  if (const auto* p = std::get_if<HPolytopeSym>(&s.shape))
    return radial_hpoly(*p, z, u, d);
  const auto& li = std::get<LinearImage>(s.shape);
  double w[kMaxAmbientDim], zz[kMaxAmbientDim];
  matvec(li.T_inv, u, w, d);
  const double nw = norm2(w, d);
  if (!(nw > 0.0)) throw GeometryError("degenerate direction pullback");
  for (int i = 0; i < d; ++i) w[i] /= nw;
  const double* zp = nullptr;
  if (!is_zero(z, d)) {
    matvec(li.T_inv, z, zz, d);
    zp = zz;
  }
  return radial_impl(*li.base, zp, w, depth + 1) / nw;
}

double support_impl(const BodySpec& s, const double* u, int depth) {
  if (depth > kMaxImageDepth)
    throw GeometryError("linear image nesting too deep");
  const int d = s.dim;
  if (const auto* r = std::get_if<Rhombus>(&s.shape)) {
    double best = 0.0;
    for (int i = 0; i < d; ++i) best = std::max(best, r->a[i] * std::abs(u[i]));
    return best;
  }
  if (const auto* b = std::get_if<Box>(&s.shape)) {
    double sum = 0.0;
    for (int i = 0; i < d; ++i) sum += b->a[i] * std::abs(u[i]);
    return sum;
  }
  if (const auto* e = std::get_if<Ellipsoid>(&s.shape)) {
    double sum = 0.0;
    for (int i = 0; i < d; ++i) {
      const double t = e->a[i] * u[i];
      sum += t * t;
    }
    return std::sqrt(sum);
  }
  if (const auto* p = std::get_if<HPolytopeSym>(&s.shape)) {
    if (p->vertices.empty())
      throw SupportUnavailable("support needs a vertex list");
    double best = 0.0;
    for (const auto& v : p->vertices)
      best = std::max(best, std::abs(dot(v.data(), u, d)));
    return best;
  }
  const auto& li = std::get<LinearImage>(s.shape);
  double v[kMaxAmbientDim];
  mat_t_vec(li.T, u, v, d);
  return support_impl(*li.base, v, depth + 1);
}

double gauge_impl(const BodySpec& s, const double* x, int depth) {
  if (depth > kMaxImageDepth)
    throw GeometryError("linear image nesting too deep");
  const int d = s.dim;
  if (const auto* r = std::get_if<Rhombus>(&s.shape)) {
    double sum = 0.0;
    for (int i = 0; i < d; ++i) sum += std::abs(x[i]) / r->a[i];
    return sum;
  }
  if (const auto* b = std::get_if<Box>(&s.shape)) {
    double best = 0.0;
    for (int i = 0; i < d; ++i) best = std::max(best, std::abs(x[i]) / b->a[i]);
    return best;
  }
  if (const auto* e = std::get_if<Ellipsoid>(&s.shape)) {
    double sum = 0.0;
    for (int i = 0; i < d; ++i) {
      const double t = x[i] / e->a[i];
      sum += t * t;
    }
    return std::sqrt(sum);
  }
  if (const auto* p = std::get_if<HPolytopeSym>(&s.shape)) {
    double best = 0.0;
    for (std::size_t j = 0; j < p->normals.size(); ++j)
      best = std::max(best,
                      std::abs(dot(p->normals[j].data(), x, d)) / p->offsets[j]);
    return best;
  }
  const auto& li = std::get<LinearImage>(s.shape);
  double y[kMaxAmbientDim];
  matvec(li.T_inv, x, y, d);
  return gauge_impl(*li.base, y, depth + 1);
}

}  // namespace

BodySpec BodySpec::rhombus(std::vector<double> a) {
  check_axis_vector(a);
  BodySpec s;
  s.dim = static_cast<int>(a.size());
  s.shape = Rhombus{std::move(a)};
  return s;
}

BodySpec BodySpec::box(std::vector<double> a) {
  check_axis_vector(a);
  BodySpec s;
  s.dim = static_cast<int>(a.size());
  s.shape = Box{std::move(a)};
  return s;
}

BodySpec BodySpec::ellipsoid(std::vector<double> a) {
  check_axis_vector(a);
  BodySpec s;
  s.dim = static_cast<int>(a.size());
  s.shape = Ellipsoid{std::move(a)};
  return s;
}

BodySpec BodySpec::hpolytope(std::vector<std::vector<double>> normals,
                             std::vector<double> offsets,
                             std::vector<std::vector<double>> vertices) {
  if (normals.empty()) throw DegenerateInput("polytope needs facet normals");
  const int d = static_cast<int>(normals.front().size());
  if (d < 2 || d > kMaxAmbientDim)
    throw DegenerateInput("ambient dimension must be 2.." +
                          std::to_string(kMaxAmbientDim));
  if (offsets.size() != normals.size())
    throw DegenerateInput("one offset per facet normal required");
  for (std::size_t j = 0; j < normals.size(); ++j) {
    if (normals[j].size() != std::size_t(d))
      throw DegenerateInput("inconsistent normal dimensions");
    double nn = 0.0;
    for (double v : normals[j]) {
      if (!std::isfinite(v)) throw DegenerateInput("normals must be finite");
      nn += v * v;
    }
    if (!(nn > 0.0)) throw DegenerateInput("facet normals must be nonzero");
    if (!(offsets[j] > 0.0) || !std::isfinite(offsets[j]))
      throw DegenerateInput("facet offsets must be positive and finite");
  }
  // boundedness: the slab intersection is compact iff the normals span R^d,
  // i.e. the second-moment matrix of the unit normals is positive definite
  {
    Eigen::MatrixXd mom = Eigen::MatrixXd::Zero(d, d);
    for (const auto& nj : normals) {
      Eigen::Map<const Eigen::VectorXd> nv(nj.data(), d);
      mom.noalias() += (nv * nv.transpose()) / nv.squaredNorm();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mom);
    if (!(es.eigenvalues().minCoeff() >
          1e-12 * std::max(es.eigenvalues().maxCoeff(), 0.0)))
      throw DegenerateInput("facet normals do not span: polytope unbounded");
  }
  if (!vertices.empty()) {
    for (const auto& v : vertices) {
      if (v.size() != std::size_t(d))
        throw DegenerateInput("inconsistent vertex dimensions");
      for (double c : v)
        if (!std::isfinite(c)) throw DegenerateInput("vertices must be finite");
    }
    for (std::size_t j = 0; j < normals.size(); ++j) {
      double reach = 0.0;
      for (const auto& v : vertices) {
        const double s = std::abs(dot(normals[j].data(), v.data(), d));
        if (s > offsets[j] * (1.0 + 1e-9))
          throw DegenerateInput("vertex violates facet " + std::to_string(j));
        reach = std::max(reach, s);
      }
      if (reach < offsets[j] * (1.0 - 1e-6))
        throw DegenerateInput("facet " + std::to_string(j) +
                              " not attained by any vertex");
    }
  }
  BodySpec s;
  s.dim = d;
  s.shape = HPolytopeSym{std::move(normals), std::move(offsets),
                         std::move(vertices)};
  return s;
}

BodySpec BodySpec::linear_image(BodySpec base, std::vector<double> t_rowmajor) {
  const int d = base.dim;
  if (t_rowmajor.size() != std::size_t(d) * d)
    throw DegenerateInput("matrix must be dim x dim");
  for (double v : t_rowmajor)
    if (!std::isfinite(v)) throw DegenerateInput("matrix must be finite");
  Eigen::MatrixXd t(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) t(r, c) = t_rowmajor[std::size_t(r) * d + c];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(t);
  const double abs_det = std::abs(lu.determinant());
  const double scale = std::pow(t.norm(), d);  // Frobenius
  if (!(abs_det > 1e-12 * scale))
    throw DegenerateInput("matrix is numerically singular");
  Eigen::MatrixXd inv = lu.inverse();
  LinearImage li;
  li.base = std::make_shared<const BodySpec>(std::move(base));
  li.T = std::move(t_rowmajor);
  li.T_inv.resize(std::size_t(d) * d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) li.T_inv[std::size_t(r) * d + c] = inv(r, c);
  li.abs_det = abs_det;
  BodySpec s;
  s.dim = d;
  s.shape = std::move(li);
  return s;
}

CenteredBody centered(BodySpec spec, std::vector<double> z) {
  const int d = spec.dim;
  if (z.empty()) z.assign(d, 0.0);
  if (z.size() != std::size_t(d))
    throw InputError("center dimension mismatch");
  for (double v : z)
    if (!std::isfinite(v)) throw InputError("center must be finite");
  if (!(gauge_impl(spec, z.data(), 0) < 1.0)) throw CenterNotInterior();
  return CenteredBody{std::move(spec), std::move(z)};
}

double radial_at(const CenteredBody& body, const double* u) {
  const double* z =
      is_zero(body.z.data(), body.spec.dim) ? nullptr : body.z.data();
  return radial_impl(body.spec, z, u, 0);
}

double radial_at(const CenteredBody& body, const std::vector<double>& u) {
  if (u.size() != std::size_t(body.spec.dim))
    throw InputError("direction dimension mismatch");
  return radial_at(body, u.data());
}

double support_at(const BodySpec& spec, const double* u) {
  return support_impl(spec, u, 0);
}

double support_at(const BodySpec& spec, const std::vector<double>& u) {
  if (u.size() != std::size_t(spec.dim))
    throw InputError("direction dimension mismatch");
  return support_impl(spec, u.data(), 0);
}

double gauge_at(const BodySpec& spec, const double* x) {
  return gauge_impl(spec, x, 0);
}

double gauge_at(const BodySpec& spec, const std::vector<double>& x) {
  if (x.size() != std::size_t(spec.dim))
    throw InputError("point dimension mismatch");
  return gauge_impl(spec, x.data(), 0);
}

BodySpec polar(const BodySpec& spec) {
  const int d = spec.dim;
  auto reciprocal = [](const std::vector<double>& a) {
    std::vector<double> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = 1.0 / a[i];
    return r;
  };
  if (const auto* r = std::get_if<Rhombus>(&spec.shape))
    return BodySpec::box(reciprocal(r->a));
  if (const auto* b = std::get_if<Box>(&spec.shape))
    return BodySpec::rhombus(reciprocal(b->a));
  if (const auto* e = std::get_if<Ellipsoid>(&spec.shape))
    return BodySpec::ellipsoid(reciprocal(e->a));
  if (const auto* p = std::get_if<HPolytopeSym>(&spec.shape)) {
    if (p->vertices.empty())
      throw PolarUnavailable(
          "polar of an H-polytope needs its vertex list for the dual facets");
    std::vector<std::vector<double>> normals = p->vertices;
    std::vector<double> offsets(normals.size(), 1.0);
    std::vector<std::vector<double>> vertices(p->normals.size());
    for (std::size_t j = 0; j < p->normals.size(); ++j) {
      vertices[j].resize(d);
      for (int i = 0; i < d; ++i)
        vertices[j][i] = p->normals[j][i] / p->offsets[j];
    }
    try {
      return BodySpec::hpolytope(std::move(normals), std::move(offsets),
                                 std::move(vertices));
    } catch (const DegenerateInput& e) {
      throw PolarUnavailable(std::string("dual pair is inconsistent: ") +
                             e.what());
    }
  }
  const auto& li = std::get<LinearImage>(spec.shape);
  // (T Omega)^* = T^{-T} Omega^*; reuse the stored inverse transposed
  std::vector<double> t_new(std::size_t(d) * d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      t_new[std::size_t(r) * d + c] = li.T_inv[std::size_t(c) * d + r];
  return BodySpec::linear_image(polar(*li.base), std::move(t_new));
}

bool contains(const BodySpec& spec, const std::vector<double>& x, double tol) {
  if (x.size() != std::size_t(spec.dim))
    throw InputError("point dimension mismatch");
  return gauge_impl(spec, x.data(), 0) <= 1.0 + tol;
}

SandwichReport sandwich_check(const std::vector<double>& a, long samples,
                              std::uint64_t seed) {
  check_axis_vector(a);
  if (samples < 1) throw InputError("samples must be >= 1");
  const int d = static_cast<int>(a.size());
  CounterRng rng{seed, 0};
  SandwichReport report;
  report.dim = d;
  report.samples = samples;
  std::vector<double> u(d);
  for (long s = 0; s < samples; ++s) {
    double nrm2 = 0.0;
    for (int i = 0; i < d; ++i) {
      u[i] = rng.next_gauss();
      nrm2 += u[i] * u[i];
    }
    if (nrm2 < 1e-300) continue;
    const double inv = 1.0 / std::sqrt(nrm2);
    for (int i = 0; i < d; ++i) u[i] *= inv;

    double rhom = 0.0, ell = 0.0, box = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d; ++i) {
      const double au = std::abs(u[i]);
      rhom += au / a[i];
      ell += (u[i] * u[i]) / (a[i] * a[i]);
      if (au > 0.0) box = std::min(box, a[i] / au);
    }
    const double r_d = 1.0 / rhom;
    const double r_e = 1.0 / std::sqrt(ell);
    const double r_r = box;

    double viol = (r_d - r_e) / r_e;
    viol = std::max(viol, (r_e - r_r) / r_r);
    viol = std::max(viol, (r_r - d * r_d) / (d * r_d));
    if (viol > report.max_violation) {
      report.max_violation = viol;
      report.worst_direction = u;
    }
  }
  report.max_violation = std::max(report.max_violation, 0.0);
  return report;
}

Loewner loewner_ellipsoid(const std::vector<std::vector<double>>& vertex_pairs,
                          double eps_target, long max_iter) {
  if (vertex_pairs.empty()) throw DegenerateInput("empty vertex set");
  if (!(eps_target > 0.0) || eps_target > 0.1)
    throw InputError("eps must lie in (0, 0.1]");
  if (max_iter < 1) throw InputError("iteration cap must be >= 1");
  const int d = static_cast<int>(vertex_pairs.front().size());
  if (d < 2 || d > kMaxAmbientDim)
    throw DegenerateInput("ambient dimension must be 2.." +
                          std::to_string(kMaxAmbientDim));
  const int m = static_cast<int>(vertex_pairs.size());
  Eigen::MatrixXd v(d, m);
  for (int j = 0; j < m; ++j) {
    if (vertex_pairs[j].size() != std::size_t(d))
      throw DegenerateInput("inconsistent vertex dimensions");
    for (int i = 0; i < d; ++i) {
      if (!std::isfinite(vertex_pairs[j][i]))
        throw DegenerateInput("vertices must be finite");
      v(i, j) = vertex_pairs[j][i];
    }
  }
  Eigen::VectorXd w = Eigen::VectorXd::Constant(m, 1.0 / m);
  Eigen::MatrixXd mom = v * w.asDiagonal() * v.transpose();
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mom);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (!(lo > 1e-12 * std::max(hi, 0.0)))
      throw DegenerateInput("vertex set does not span (singular moments)");
  }

  long iterations = 0;
  double gap = std::numeric_limits<double>::infinity();
  while (true) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(mom);
    Eigen::MatrixXd sol = ldlt.solve(v);  // columns M^{-1} v_j
    int j_max = 0;
    double g_max = 0.0;
    for (int j = 0; j < m; ++j) {
      const double g = v.col(j).dot(sol.col(j));
      if (g > g_max) {
        g_max = g;
        j_max = j;
      }
    }
    gap = g_max / d - 1.0;
    if (gap <= eps_target) break;
    if (iterations >= max_iter) throw NoConvergence(iterations, gap);
    const double tau = (g_max - d) / (d * (g_max - 1.0));
    w *= (1.0 - tau);
    w[j_max] += tau;
    mom = (1.0 - tau) * mom +
          tau * (v.col(j_max) * v.col(j_max).transpose());
    ++iterations;
  }

  Eigen::MatrixXd a_raw = (double(d) * mom).ldlt().solve(
      Eigen::MatrixXd::Identity(d, d));
  a_raw = 0.5 * (a_raw + a_raw.transpose());
  double worst = 0.0;
  for (int j = 0; j < m; ++j)
    worst = std::max(worst, v.col(j).dot(a_raw * v.col(j)));
  const double inflate = std::max(worst - 1.0, 0.0);
  Eigen::MatrixXd a = a_raw / (1.0 + inflate);

  Loewner out;
  out.dim = d;
  out.eps = std::max(gap, 0.0);
  out.iterations = iterations;
  out.A.resize(std::size_t(d) * d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) out.A[std::size_t(r) * d + c] = a(r, c);
  return out;
}

std::vector<std::vector<double>> vertex_pairs(const BodySpec& spec) {
  const int d = spec.dim;
  if (const auto* r = std::get_if<Rhombus>(&spec.shape)) {
    std::vector<std::vector<double>> out(d, std::vector<double>(d, 0.0));
    for (int i = 0; i < d; ++i) out[i][i] = r->a[i];
    return out;
  }
  if (const auto* b = std::get_if<Box>(&spec.shape)) {
    const unsigned count = 1u << (d - 1);  // fix the sign of the first axis
    std::vector<std::vector<double>> out;
    out.reserve(count);
    for (unsigned bits = 0; bits < count; ++bits) {
      std::vector<double> v(d);
      v[0] = b->a[0];
      for (int i = 1; i < d; ++i)
        v[i] = ((bits >> (i - 1)) & 1u) ? -b->a[i] : b->a[i];
      out.push_back(std::move(v));
    }
    return out;
  }
  if (std::get_if<Ellipsoid>(&spec.shape))
    throw InputError("ellipsoids have no vertex representation");
  if (const auto* p = std::get_if<HPolytopeSym>(&spec.shape)) {
    if (p->vertices.empty())
      throw SupportUnavailable("polytope has no vertex list");
    return p->vertices;
  }
  const auto& li = std::get<LinearImage>(spec.shape);
  auto base = vertex_pairs(*li.base);
  std::vector<double> image(d);
  for (auto& vert : base) {
    matvec(li.T, vert.data(), image.data(), d);
    vert = image;
  }
  return base;
}

double diameter_estimate(const BodySpec& spec) {
  const int d = spec.dim;
  CenteredBody body{spec, std::vector<double>(d, 0.0)};
  double best = 0.0;
  std::vector<double> u(d, 0.0);
  for (int i = 0; i < d; ++i) {
    u.assign(d, 0.0);
    u[i] = 1.0;
    best = std::max(best, radial_at(body, u.data()));
  }
  CounterRng rng{0xD1A3EEDull, 0};
  for (int probe = 0; probe < 32; ++probe) {
    double nrm2 = 0.0;
    for (int i = 0; i < d; ++i) {
      u[i] = rng.next_gauss();
      nrm2 += u[i] * u[i];
    }
    if (nrm2 < 1e-300) continue;
    const double inv = 1.0 / std::sqrt(nrm2);
    for (int i = 0; i < d; ++i) u[i] *= inv;
    best = std::max(best, radial_at(body, u.data()));
  }
  return 2.0 * best;
}

}  // namespace bsl
