#ifndef GOPW_DG_HPP
#define GOPW_DG_HPP

#include <Eigen/SparseCore>
#include <complex>
#include <functional>
#include <vector>

#include "gopw/basis.hpp"
#include "gopw/local_solver.hpp"
#include "gopw/mesh.hpp"

namespace gopw {

enum class BoundaryWeight {
  omega,  // eta = omega, pairing with boundary data g = (d_n + i omega) u
  kappa   // eta = omega sqrt(xi(r)) pointwise
};

struct DgParams {
  double alpha = 0.5;
  double beta = 0.5;
  double delta = 0.5;
  double gamma = 0.5;
  BoundaryWeight eta = BoundaryWeight::omega;
  int quad_n1d = 0;  // 0: wavelength-resolving default
  int threads = 1;
};

// Assembled global system for the homogeneous part u2.  Unknown ordering is
// element-major with the per-element basis ordering inside each block.
struct DgSystem {
  Eigen::SparseMatrix<std::complex<double>> matrix;
  Eigen::VectorXcd rhs;
  int block = 0;
  double omega = 0.0;
  DgParams params;
};

using BoundaryDataFn = std::function<std::complex<double>(Point, Point)>;  // (r, outward n)

// Sesquilinear form including the Trefftz-defect stabilization
// (i gamma / omega^2) sum_k int (Delta u + kappa^2 u) conj(Delta v + kappa^2 v).
// Face contributions are accumulated in fixed face order from per-face blocks
// computed independently, so assembly is bitwise reproducible for any thread
// count.
DgSystem assemble(const MeshPartition& mesh, const std::vector<GopwBasisSet>& spaces,
                  const CoefficientField& field, double omega, const DgParams& params);

// Load functional: sum_k int f conj(v) - B_h(u1, v) + boundary g terms.  u1
// is the piecewise particular solution; its interior-face jumps and its
// stabilization defect both contribute.
Eigen::VectorXcd assemble_rhs(const MeshPartition& mesh, const std::vector<GopwBasisSet>& spaces,
                              const std::vector<SpectralLocalSolution>& u1,
                              const CoefficientField& field, const SourceFn& f,
                              const BoundaryDataFn& g, double omega, const DgParams& params);

struct DgSolveStats {
  double residual = 0.0;  // ||Ax-b|| / ||b||
  long nonzeros = 0;
};

// Sparse LU factorization; returns per-element coefficient vectors.
std::vector<Eigen::VectorXcd> solve(const DgSystem& sys, DgSolveStats* stats = nullptr);

}  // namespace gopw

#endif
