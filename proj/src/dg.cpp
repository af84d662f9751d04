#include "gopw/dg.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <stdexcept>

#include "gopw/parallel.hpp"
#include "gopw/quadrature.hpp"

namespace gopw {

namespace {

using Cplx = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;

int pick_n1d(const DgParams& params, double omega, double h, int q) {
  return params.quad_n1d > 0 ? params.quad_n1d : default_n1d(omega, h, q, q + 4);
}

double eta_at(const DgParams& params, const CoefficientField& field, double omega, Point r) {
  return params.eta == BoundaryWeight::omega ? omega : omega * std::sqrt(field.value(r));
}

// Basis traces on a set of quadrature points.
struct TraceData {
  MatC val;   // npts x nf
  MatC gn;    // npts x nf, normal component of the gradient
  MatC gx, gy;
};

TraceData trace(const GopwBasisSet& space, const QuadRule& rule, Point normal,
                bool need_full_grad) {
  const std::size_t npts = rule.size(), nf = space.size();
  TraceData t;
  t.val.resize(npts, nf);
  t.gn.resize(npts, nf);
  if (need_full_grad) {
    t.gx.resize(npts, nf);
    t.gy.resize(npts, nf);
  }
  for (std::size_t qi = 0; qi < npts; ++qi)
    for (std::size_t k = 0; k < nf; ++k) {
      const BasisEval e = space.eval_all(k, rule[qi].r);
      t.val(qi, k) = e.value;
      t.gn(qi, k) = e.grad_x * normal.x + e.grad_y * normal.y;
      if (need_full_grad) {
        t.gx(qi, k) = e.grad_x;
        t.gy(qi, k) = e.grad_y;
      }
    }
  return t;
}

Eigen::VectorXd weights_of(const QuadRule& rule) {
  Eigen::VectorXd w(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) w[i] = rule[i].w;
  return w;
}

// entry(j,k) = sum_q w_q trial(q,k) conj(test(q,j))
MatC pairing(const MatC& test, const MatC& trial, const Eigen::VectorXd& w) {
  return test.adjoint() * w.asDiagonal() * trial;
}

// rhs(j) = sum_q w_q trial(q) conj(test(q,j))
VecC pairing_vec(const MatC& test, const VecC& trial, const Eigen::VectorXd& w) {
  return test.adjoint() * trial.cwiseProduct(w.cast<Cplx>());
}

struct FaceGeometry {
  QuadRule rule;
  Eigen::VectorXd w;
};

FaceGeometry face_geometry(Point a, Point b, int n1d) {
  FaceGeometry g;
  g.rule = face_rule(a, b, n1d);
  g.w = weights_of(g.rule);
  return g;
}

// Element volume data: values, gradients and stabilization defects of every
// basis member at the volume rule, plus kappa^2 at the points.
struct VolumeData {
  QuadRule rule;
  Eigen::VectorXd w;
  MatC val, gx, gy, defect;  // defect = lap + kappa^2 val
  Eigen::VectorXd kap2;
};

VolumeData volume_data(const GopwBasisSet& space, const Rect& box,
                       const CoefficientField& field, double omega, int n1d) {
  VolumeData v;
  v.rule = rect_rule(box, n1d);
  v.w = weights_of(v.rule);
  const std::size_t npts = v.rule.size(), nf = space.size();
  v.val.resize(npts, nf);
  v.gx.resize(npts, nf);
  v.gy.resize(npts, nf);
  v.defect.resize(npts, nf);
  v.kap2.resize(npts);
  for (std::size_t qi = 0; qi < npts; ++qi) {
    v.kap2[qi] = omega * omega * field.value(v.rule[qi].r);
    for (std::size_t k = 0; k < nf; ++k) {
      const BasisEval e = space.eval_all(k, v.rule[qi].r);
      v.val(qi, k) = e.value;
      v.gx(qi, k) = e.grad_x;
      v.gy(qi, k) = e.grad_y;
      v.defect(qi, k) = e.lap + v.kap2[qi] * e.value;
    }
  }
  return v;
}

MatC volume_block(const VolumeData& v, double omega, double gamma) {
  MatC blk = pairing(v.gx, v.gx, v.w) + pairing(v.gy, v.gy, v.w);
  blk -= v.val.adjoint() * v.w.cwiseProduct(v.kap2).asDiagonal() * v.val;
  blk += (Cplx(0.0, gamma) / (omega * omega)) * pairing(v.defect, v.defect, v.w);
  return blk;
}

// The four interior-face blocks; block[t][s] couples trial on side s to test
// on side t (0 = left, 1 = right).
struct FaceBlocks {
  MatC block[2][2];
};

FaceBlocks interior_face_blocks(const GopwBasisSet& left, const GopwBasisSet& right,
                                const InteriorFace& face, double omega, const DgParams& params,
                                int n1d) {
  const FaceGeometry g = face_geometry(face.a, face.b, n1d);
  const Point normals[2] = {face.normal, {-face.normal.x, -face.normal.y}};
  const TraceData tr[2] = {trace(left, g.rule, normals[0], false),
                           trace(right, g.rule, normals[1], false)};
  // gn is taken against each side's own normal; on a straight face the two
  // normals are collinear, so grad v . n_other = (n.n_other) gn exactly
  FaceBlocks out;
  const Cplx i_over_w(0.0, 1.0 / omega);
  const Cplx iw(0.0, omega);
  for (int t = 0; t < 2; ++t)
    for (int s = 0; s < 2; ++s) {
      const double nn = dot(normals[s], normals[t]);
      MatC blk = MatC::Zero(tr[t].val.cols(), tr[s].val.cols());
      // -int [[u]] . conj({{grad v}}):  -(1/2) u_s conj(grad v_t . n_s)
      // grad v_t . n_s = gn_t * (n_t.n_s)
      blk -= 0.5 * nn * pairing(tr[t].gn, tr[s].val, g.w);
      // +i/w beta [[grad u]] conj([[grad v]])
      blk += i_over_w * params.beta * pairing(tr[t].gn, tr[s].gn, g.w);
      // +i w alpha [[u]].conj([[v]])
      blk += iw * params.alpha * nn * pairing(tr[t].val, tr[s].val, g.w);
      // -int {{grad u}} . conj([[v]]): -(1/2)(grad u_s . n_t) conj(v_t)
      blk -= 0.5 * nn * pairing(tr[t].val, tr[s].gn, g.w);
      out.block[t][s] = blk;
    }
  return out;
}

MatC boundary_face_block(const GopwBasisSet& space, const BoundaryFace& face,
                         const CoefficientField& field, double omega, const DgParams& params,
                         int n1d) {
  const FaceGeometry g = face_geometry(face.a, face.b, n1d);
  const TraceData tr = trace(space, g.rule, face.outward_normal, false);
  Eigen::VectorXd eta(g.rule.size());
  for (std::size_t i = 0; i < g.rule.size(); ++i)
    eta[i] = eta_at(params, field, omega, g.rule[i].r);
  const Eigen::VectorXd w_eta = g.w.cwiseProduct(eta);
  const Cplx i_over_w(0.0, 1.0 / omega);

  MatC blk = MatC::Zero(tr.val.cols(), tr.val.cols());
  // -w^-1 delta int eta u conj(grad v.n)
  blk -= (params.delta / omega) * (tr.gn.adjoint() * w_eta.asDiagonal() * tr.val);
  // -delta int (grad u.n) conj(v)
  blk -= params.delta * pairing(tr.val, tr.gn, g.w);
  // +i w^-1 delta int (grad u.n) conj(grad v.n)
  blk += i_over_w * params.delta * pairing(tr.gn, tr.gn, g.w);
  // +i (1-delta) int eta u conj(v)
  blk += Cplx(0.0, 1.0) * (1.0 - params.delta) * (tr.val.adjoint() * w_eta.asDiagonal() * tr.val);
  return blk;
}

// u1 traces on a rule (value and normal derivative against a given normal).
struct ScalarTrace {
  VecC val, gn;
};

ScalarTrace u1_trace(const SpectralLocalSolution& u1, const QuadRule& rule, Point normal) {
  ScalarTrace t;
  t.val.resize(rule.size());
  t.gn.resize(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    t.val[i] = u1.value(rule[i].r);
    const auto [gx, gy] = u1.gradient(rule[i].r);
    t.gn[i] = gx * normal.x + gy * normal.y;
  }
  return t;
}

}  // namespace

DgSystem assemble(const MeshPartition& mesh, const std::vector<GopwBasisSet>& spaces,
                  const CoefficientField& field, double omega, const DgParams& params) {
  if (spaces.size() != mesh.elements().size())
    throw std::invalid_argument("one local space per element is required");
  const std::size_t nf = spaces.front().size();
  for (const auto& s : spaces) {
    if (s.size() != nf) throw std::invalid_argument("local spaces must share a dimension");
    if (s.omega() != omega)
      throw std::invalid_argument("configuration error: spaces built with mixed omega");
  }
  const int n1d = pick_n1d(params, omega, mesh.h(), spaces.front().q());

  const std::size_t ne = mesh.elements().size();
  const std::size_t nif = mesh.interior_faces().size();
  const std::size_t nbf = mesh.boundary_faces().size();

  std::vector<MatC> diag(ne);
  parallel_for(ne, params.threads, [&](std::size_t k) {
    const VolumeData v = volume_data(spaces[k], mesh.elements()[k].box, field, omega, n1d);
    diag[k] = volume_block(v, omega, params.gamma);
  });

  std::vector<FaceBlocks> fblocks(nif);
  parallel_for(nif, params.threads, [&](std::size_t i) {
    const InteriorFace& f = mesh.interior_faces()[i];
    fblocks[i] =
        interior_face_blocks(spaces[f.left_id], spaces[f.right_id], f, omega, params, n1d);
  });

  std::vector<MatC> bblocks(nbf);
  parallel_for(nbf, params.threads, [&](std::size_t i) {
    const BoundaryFace& f = mesh.boundary_faces()[i];
    bblocks[i] = boundary_face_block(spaces[f.element_id], f, field, omega, params, n1d);
  });

  // deterministic serial merge
  std::vector<Eigen::Triplet<Cplx>> trips;
  trips.reserve(ne * nf * nf + 4 * nif * nf * nf + nbf * nf * nf);
  auto add_block = [&](int row_el, int col_el, const MatC& blk) {
    for (std::size_t j = 0; j < nf; ++j)
      for (std::size_t k = 0; k < nf; ++k)
        trips.emplace_back(static_cast<int>(row_el * nf + j), static_cast<int>(col_el * nf + k),
                           blk(j, k));
  };
  for (std::size_t k = 0; k < ne; ++k) add_block(static_cast<int>(k), static_cast<int>(k), diag[k]);
  for (std::size_t i = 0; i < nif; ++i) {
    const InteriorFace& f = mesh.interior_faces()[i];
    const int el[2] = {f.left_id, f.right_id};
    for (int t = 0; t < 2; ++t)
      for (int s = 0; s < 2; ++s) add_block(el[t], el[s], fblocks[i].block[t][s]);
  }
  for (std::size_t i = 0; i < nbf; ++i) {
    const int e = mesh.boundary_faces()[i].element_id;
    add_block(e, e, bblocks[i]);
  }

  DgSystem sys;
  sys.block = static_cast<int>(nf);
  sys.omega = omega;
  sys.params = params;
  sys.matrix.resize(static_cast<long>(ne * nf), static_cast<long>(ne * nf));
  sys.matrix.setFromTriplets(trips.begin(), trips.end());
  sys.rhs = VecC::Zero(static_cast<long>(ne * nf));
  return sys;
}

Eigen::VectorXcd assemble_rhs(const MeshPartition& mesh, const std::vector<GopwBasisSet>& spaces,
                              const std::vector<SpectralLocalSolution>& u1,
                              const CoefficientField& field, const SourceFn& f,
                              const BoundaryDataFn& g, double omega, const DgParams& params) {
  if (u1.size() != mesh.elements().size())
    throw std::invalid_argument("one local solution per element is required");
  const std::size_t nf = spaces.front().size();
  const int n1d = pick_n1d(params, omega, mesh.h(), spaces.front().q());
  const std::size_t ne = mesh.elements().size();
  const std::size_t nif = mesh.interior_faces().size();
  const std::size_t nbf = mesh.boundary_faces().size();
  const Cplx i_over_w(0.0, 1.0 / omega);
  const Cplx iw(0.0, omega);

  // per-element contributions: volume f-term, minus volume/stabilization
  // terms of B_h(u1, v)
  std::vector<VecC> elem_rhs(ne);
  parallel_for(ne, params.threads, [&](std::size_t k) {
    const VolumeData v = volume_data(spaces[k], mesh.elements()[k].box, field, omega, n1d);
    const std::size_t npts = v.rule.size();
    VecC fv(npts), u1v(npts), u1gx(npts), u1gy(npts), u1defect(npts);
    for (std::size_t qi = 0; qi < npts; ++qi) {
      const Point r = v.rule[qi].r;
      fv[qi] = f(r);
      u1v[qi] = u1[k].value(r);
      const auto [gx, gy] = u1[k].gradient(r);
      u1gx[qi] = gx;
      u1gy[qi] = gy;
      u1defect[qi] = u1[k].lap(r) + v.kap2[qi] * u1v[qi];
    }
    VecC out = pairing_vec(v.val, fv, v.w);
    // minus the volume part of B_h(u1, v)
    out -= pairing_vec(v.gx, u1gx, v.w);
    out -= pairing_vec(v.gy, u1gy, v.w);
    out += pairing_vec(v.val, u1v, v.w.cwiseProduct(v.kap2));
    out -= (Cplx(0.0, params.gamma) / (omega * omega)) * pairing_vec(v.defect, u1defect, v.w);
    elem_rhs[k] = out;
  });

  // interior faces: minus the face terms of A_h(u1, v), both test sides
  struct FaceRhs {
    VecC side[2];
  };
  std::vector<FaceRhs> face_rhs(nif);
  parallel_for(nif, params.threads, [&](std::size_t i) {
    const InteriorFace& fc = mesh.interior_faces()[i];
    const FaceGeometry geo = face_geometry(fc.a, fc.b, n1d);
    const Point normals[2] = {fc.normal, {-fc.normal.x, -fc.normal.y}};
    const int el[2] = {fc.left_id, fc.right_id};
    const TraceData tr[2] = {trace(spaces[el[0]], geo.rule, normals[0], false),
                             trace(spaces[el[1]], geo.rule, normals[1], false)};
    const ScalarTrace ut[2] = {u1_trace(u1[el[0]], geo.rule, normals[0]),
                               u1_trace(u1[el[1]], geo.rule, normals[1])};
    for (int t = 0; t < 2; ++t) {
      VecC acc = VecC::Zero(nf);
      for (int s = 0; s < 2; ++s) {
        const double nn = dot(normals[s], normals[t]);
        // same four face terms as in the matrix, trial replaced by u1 side s
        acc -= 0.5 * nn * pairing_vec(tr[t].gn, ut[s].val, geo.w);
        acc += i_over_w * params.beta * pairing_vec(tr[t].gn, ut[s].gn, geo.w);
        acc += iw * params.alpha * nn * pairing_vec(tr[t].val, ut[s].val, geo.w);
        acc -= 0.5 * nn * pairing_vec(tr[t].val, ut[s].gn, geo.w);
      }
      face_rhs[i].side[t] = -acc;  // ell_h carries -A_h(u1, v)
    }
  });

  // boundary faces: g terms plus minus the boundary terms of A_h(u1, v)
  std::vector<VecC> bdry_rhs(nbf);
  parallel_for(nbf, params.threads, [&](std::size_t i) {
    const BoundaryFace& fc = mesh.boundary_faces()[i];
    const FaceGeometry geo = face_geometry(fc.a, fc.b, n1d);
    const TraceData tr = trace(spaces[fc.element_id], geo.rule, fc.outward_normal, false);
    const ScalarTrace ut = u1_trace(u1[fc.element_id], geo.rule, fc.outward_normal);
    const std::size_t npts = geo.rule.size();
    VecC gv(npts);
    Eigen::VectorXd eta(npts);
    for (std::size_t qi = 0; qi < npts; ++qi) {
      gv[qi] = g(geo.rule[qi].r, fc.outward_normal);
      eta[qi] = eta_at(params, field, omega, geo.rule[qi].r);
    }
    VecC out = i_over_w * params.delta * pairing_vec(tr.gn, gv, geo.w);
    out += (1.0 - params.delta) * pairing_vec(tr.val, gv, geo.w);
    // minus boundary terms of A_h(u1, v)
    VecC acc = VecC::Zero(nf);
    const Eigen::VectorXd w_eta = geo.w.cwiseProduct(eta);
    acc -= (params.delta / omega) * pairing_vec(tr.gn, ut.val, w_eta);
    acc -= params.delta * pairing_vec(tr.val, ut.gn, geo.w);
    acc += i_over_w * params.delta * pairing_vec(tr.gn, ut.gn, geo.w);
    acc += Cplx(0.0, 1.0) * (1.0 - params.delta) * pairing_vec(tr.val, ut.val, w_eta);
    bdry_rhs[i] = out - acc;
  });

  VecC rhs = VecC::Zero(static_cast<long>(ne * nf));
  for (std::size_t k = 0; k < ne; ++k) rhs.segment(k * nf, nf) += elem_rhs[k];
  for (std::size_t i = 0; i < nif; ++i) {
    const InteriorFace& fc = mesh.interior_faces()[i];
    rhs.segment(static_cast<long>(fc.left_id) * nf, nf) += face_rhs[i].side[0];
    rhs.segment(static_cast<long>(fc.right_id) * nf, nf) += face_rhs[i].side[1];
  }
  for (std::size_t i = 0; i < nbf; ++i)
    rhs.segment(static_cast<long>(mesh.boundary_faces()[i].element_id) * nf, nf) += bdry_rhs[i];
  return rhs;
}

std::vector<Eigen::VectorXcd> solve(const DgSystem& sys, DgSolveStats* stats) {
  Eigen::SparseLU<Eigen::SparseMatrix<Cplx>> lu;
  lu.compute(sys.matrix);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("sparse factorization failed (matrix numerically singular?)");
  const VecC x = lu.solve(sys.rhs);
  const double rhs_norm = sys.rhs.norm();
  const double resid = rhs_norm > 0 ? (sys.matrix * x - sys.rhs).norm() / rhs_norm : 0.0;
  if (stats != nullptr) {
    stats->residual = resid;
    stats->nonzeros = sys.matrix.nonZeros();
  }
  std::vector<VecC> out;
  const long ne = sys.matrix.rows() / sys.block;
  out.reserve(ne);
  for (long k = 0; k < ne; ++k) out.push_back(x.segment(k * sys.block, sys.block));
  return out;
}

}  // namespace gopw
