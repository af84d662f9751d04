#include "gopw/amplitude.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gopw {

ComplexPoly AmplitudePolynomial::collapse(double omega) const {
  ComplexPoly out = to_complex(parts.front());
  std::complex<double> w(1.0, 0.0);
  const std::complex<double> i_omega(0.0, omega);
  for (std::size_t s = 1; s < parts.size(); ++s) {
    w /= i_omega;
    out = add(out, scale(to_complex(parts[s]), w));
  }
  return out;
}

double AmplitudePolynomial::value_at_center() const { return parts.front().coeff(0, 0); }

int transport_kill_order(int q, int s, double omega, double h) {
  if (omega <= 0.0 || h <= 0.0 || h >= 1.0) return std::max(1, q + 1 - s);
  const double bound = q + (1.0 - s) * std::log(omega) / std::log(1.0 / h);
  return std::max(1, static_cast<int>(std::ceil(bound - 1e-9)));
}

namespace {

struct ConstraintSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
};

Eigen::VectorXd coeffs_below(const RealPoly& p, int kill_below) {
  Eigen::VectorXd out(multi_index::size(kill_below - 1));
  std::size_t k = 0;
  for (int d = 0; d < kill_below; ++d)
    for (int j = 0; j <= d; ++j, ++k) out[k] = p.coeff(d - j, j);
  return out;
}

Eigen::VectorXd level_of(const RealPoly& p, int d) {
  Eigen::VectorXd out(d + 1);
  for (int j = 0; j <= d; ++j) out[j] = p.coeff(d - j, j);
  return out;
}

RealPoly transport_apply(const RealPoly& a, const RealPoly& tau_x, const RealPoly& tau_y,
                         const RealPoly& tau_lap) {
  // 2 grad a . grad tau + a lap tau
  const RealPoly ax = differentiate(a, Axis::x);
  const RealPoly ay = differentiate(a, Axis::y);
  RealPoly out = add(multiply(ax, tau_x), multiply(ay, tau_y));
  out = scale(out, 2.0);
  return add(out, multiply(a, tau_lap));
}

// Rows: transport terms of degree < kill_below, as a linear map of the
// degree-deg_a unknown polynomial (columns in multi_index order).
ConstraintSystem transport_rows(const PhasePolynomial& phase, int deg_a, int kill_below,
                                const RealPoly* prev_lap) {
  const Point r0 = phase.tau.center();
  const RealPoly tx = differentiate(phase.tau, Axis::x);
  const RealPoly ty = differentiate(phase.tau, Axis::y);
  const RealPoly tl = laplacian(phase.tau);
  const std::size_t ncols = multi_index::size(deg_a);
  const std::size_t nrows = multi_index::size(kill_below - 1);
  ConstraintSystem sys;
  sys.A.resize(nrows, ncols);
  for (std::size_t t = 0; t < ncols; ++t) {
    const auto [r, j] = multi_index::unflatten(t);
    RealPoly e(r0, deg_a);
    e.at(r, j) = 1.0;
    sys.A.col(t) = coeffs_below(transport_apply(e, tx, ty, tl), kill_below);
  }
  sys.b = Eigen::VectorXd::Zero(nrows);
  if (prev_lap != nullptr) sys.b = -coeffs_below(*prev_lap, kill_below);
  return sys;
}

// Rows forcing the listed total-degree levels of Delta a to vanish.
Eigen::MatrixXd laplacian_rows(Point r0, int deg_a, const std::vector<int>& levels) {
  std::size_t nrows = 0;
  for (int d : levels) nrows += d + 1;
  const std::size_t ncols = multi_index::size(deg_a);
  Eigen::MatrixXd L(nrows, ncols);
  for (std::size_t t = 0; t < ncols; ++t) {
    const auto [r, j] = multi_index::unflatten(t);
    RealPoly e(r0, deg_a);
    e.at(r, j) = 1.0;
    const RealPoly le = laplacian(e);
    std::size_t row = 0;
    for (int d : levels) {
      L.block(row, t, d + 1, 1) = level_of(le, d);
      row += d + 1;
    }
  }
  return L;
}

Eigen::VectorXd value_row(int deg_a) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(multi_index::size(deg_a));
  e[0] = 1.0;
  return e;
}

constexpr double kNullTol = 1e-10;

// Minimum-norm least-squares solution; throws if the stacked system is
// inconsistent beyond roundoff.
Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                               const char* what) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(kNullTol);
  const Eigen::VectorXd x = svd.solve(b);
  const double resid = (A * x - b).norm();
  const double scale = std::max(1.0, b.norm());
  if (resid > 1e-8 * scale) {
    std::ostringstream msg;
    msg << "amplitude construction failed: inconsistent " << what << " system, residual "
        << resid << " (rows " << A.rows() << ", cols " << A.cols() << ", rank " << svd.rank()
        << ")";
    throw std::runtime_error(msg.str());
  }
  return x;
}

Eigen::MatrixXd null_basis(const Eigen::MatrixXd& A) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv[0] : 0.0;
  long rank = 0;
  for (long i = 0; i < sv.size(); ++i)
    if (sv[i] > kNullTol * std::max(smax, 1e-300)) ++rank;
  return svd.matrixV().rightCols(svd.matrixV().cols() - rank);
}

void fix_sign(Eigen::VectorXd& v) {
  long imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v[imax] < 0.0) v = -v;
}

RealPoly from_vector(Point r0, int deg, const Eigen::VectorXd& v) {
  RealPoly out(r0, deg);
  std::vector<double> c(v.data(), v.data() + v.size());
  return RealPoly(r0, deg, std::move(c));
}

}  // namespace

AmplitudeBuildResult build_amplitude_smallq(const PhasePolynomial& phase) {
  const int q = phase.q;
  if (q != 1 && q != 2)
    throw std::invalid_argument("direct amplitude construction requires q in {1, 2}");
  const Point r0 = phase.tau.center();
  const int deg_a = q + 1;

  ConstraintSystem tr = transport_rows(phase, deg_a, q + 1, nullptr);
  std::vector<int> lap_levels(q);
  for (int d = 0; d < q; ++d) lap_levels[d] = d;  // Delta a has degree q-1
  const Eigen::MatrixXd L = laplacian_rows(r0, deg_a, lap_levels);
  Eigen::MatrixXd C(tr.A.rows() + L.rows(), tr.A.cols());
  C << tr.A, L;

  const Eigen::MatrixXd N = null_basis(C);
  AmplitudeBuildResult result;
  result.last_level_nullity = static_cast<int>(N.cols());

  const Eigen::VectorXd e0 = value_row(deg_a);

  // primary: min-norm solution of {C v = 0, v(r0) = 1}
  Eigen::MatrixXd C1(C.rows() + 1, C.cols());
  C1 << C, e0.transpose();
  Eigen::VectorXd b1 = Eigen::VectorXd::Zero(C1.rows());
  b1[C1.rows() - 1] = 1.0;
  const Eigen::VectorXd v1 = min_norm_solve(C1, b1, "direct transport");
  result.amplitudes.push_back(AmplitudePolynomial{{from_vector(r0, deg_a, v1)}, q, 0});

  if (q == 1) {
    // companion: unit null vector with value 0 at r0
    Eigen::MatrixXd N2 = null_basis(C1);
    if (N2.cols() == 0)
      throw std::runtime_error("amplitude construction failed: no vanishing null direction");
    Eigen::VectorXd v2 = N2.col(N2.cols() - 1);
    v2.normalize();
    fix_sign(v2);
    result.amplitudes.push_back(AmplitudePolynomial{{from_vector(r0, deg_a, v2)}, q, 0});
  }
  return result;
}

AmplitudeBuildResult build_amplitude_recursive(const PhasePolynomial& phase, int n_q,
                                               double omega, double h) {
  const int q = phase.q;
  if (q < 2) throw std::invalid_argument("transport recursion requires q >= 2");
  if (n_q != q - 2 && n_q != q - 1)
    throw std::invalid_argument("terminate index must be q-2 or q-1");
  const Point r0 = phase.tau.center();

  AmplitudeBuildResult result;
  std::vector<RealPoly> parts;
  RealPoly prev_lap;
  AmplitudePolynomial second;

  for (int s = 0; s <= n_q; ++s) {
    const int deg = q + 1 - s;
    const int q_s = (s == 0) ? q + 1 : transport_kill_order(q, s, omega, h);
    ConstraintSystem tr =
        transport_rows(phase, deg, q_s, s == 0 ? nullptr : &prev_lap);
    const Eigen::VectorXd e0 = value_row(deg);

    if (s < n_q) {
      // harmonicity constraints: Delta a_s vanishes at r0 and, when q_s > 2,
      // at the full degree-(q_s - 2) level
      std::vector<int> levels{0};
      if (q_s > 2 && q_s - 2 <= deg - 2) levels.push_back(q_s - 2);
      const Eigen::MatrixXd L = laplacian_rows(r0, deg, levels);
      Eigen::MatrixXd C(tr.A.rows() + L.rows() + 1, tr.A.cols());
      C << tr.A, L, e0.transpose();
      Eigen::VectorXd b = Eigen::VectorXd::Zero(C.rows());
      b.head(tr.b.size()) = tr.b;
      b[C.rows() - 1] = (s == 0) ? 1.0 : 0.0;
      const Eigen::VectorXd x = min_norm_solve(C, b, "transport recursion");
      parts.push_back(from_vector(r0, deg, x));
    } else {
      // final level: transport rows plus Delta a_{n_q} = 0 identically
      std::vector<int> levels;
      for (int d = 0; d <= deg - 2; ++d) levels.push_back(d);
      const Eigen::MatrixXd L = laplacian_rows(r0, deg, levels);
      Eigen::MatrixXd C(tr.A.rows() + L.rows(), tr.A.cols());
      C << tr.A, L;
      Eigen::VectorXd b(C.rows());
      b << tr.b, Eigen::VectorXd::Zero(L.rows());
      result.last_level_nullity = static_cast<int>(null_basis(C).cols());

      Eigen::MatrixXd C1(C.rows() + 1, C.cols());
      C1 << C, e0.transpose();
      Eigen::VectorXd b1(C1.rows());
      b1 << b, 0.0;
      const Eigen::VectorXd x = min_norm_solve(C1, b1, "final transport level");
      parts.push_back(from_vector(r0, deg, x));

      if (n_q == q - 1) {
        const Eigen::MatrixXd N2 = null_basis(C1);
        if (N2.cols() == 0)
          throw std::runtime_error(
              "amplitude construction failed: no vanishing null direction at final level");
        Eigen::VectorXd dir = N2.col(N2.cols() - 1);
        dir.normalize();
        fix_sign(dir);
        second.parts = parts;
        second.parts.back() = from_vector(r0, deg, x + dir);
        second.q = q;
        second.n_q = n_q;
      }
    }
    prev_lap = laplacian(parts.back());
  }

  result.amplitudes.push_back(AmplitudePolynomial{parts, q, n_q});
  if (n_q == q - 1) result.amplitudes.push_back(second);
  return result;
}

}  // namespace gopw
