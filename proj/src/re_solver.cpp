#include "fairprice/re_solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "fairprice/errors.hpp"

namespace fairprice {

namespace {

using cd = std::complex<double>;

bool inside_unit_circle(cd z) { return std::abs(z) < 1.0; }

// Plane rotation [c s; -conj(s) c] sending (f, g) to (r, 0).
void make_rotation(cd f, cd g, double& c, cd& s) {
  const double af = std::abs(f);
  const double ag = std::abs(g);
  if (ag == 0.0) {
    c = 1.0;
    s = 0.0;
    return;
  }
  if (af == 0.0) {
    c = 0.0;
    s = std::conj(g) / ag;
    return;
  }
  const double norm = std::hypot(af, ag);
  c = af / norm;
  s = (f / af) * std::conj(g) / norm;
}

// Swap adjacent diagonal entries k, k+1 of an upper-triangular T, updating U.
void swap_diagonal(Eigen::MatrixXcd& t, Eigen::MatrixXcd& u, int k) {
  const int n = static_cast<int>(t.rows());
  const cd t11 = t(k, k);
  const cd t22 = t(k + 1, k + 1);
  double c = 0.0;
  cd s = 0.0;
  make_rotation(t(k, k + 1), t22 - t11, c, s);

  // Rows k, k+1 receive G from the left.
  for (int j = k + 2; j < n; ++j) {
    const cd x = t(k, j);
    const cd y = t(k + 1, j);
    t(k, j) = c * x + s * y;
    t(k + 1, j) = c * y - std::conj(s) * x;
  }
  // Columns k, k+1 receive G* from the right.
  const cd sc = std::conj(s);
  for (int i = 0; i < k; ++i) {
    const cd x = t(i, k);
    const cd y = t(i, k + 1);
    t(i, k) = c * x + sc * y;
    t(i, k + 1) = c * y - s * x;
  }
  t(k, k) = t22;
  t(k + 1, k + 1) = t11;
  for (int i = 0; i < n; ++i) {
    const cd x = u(i, k);
    const cd y = u(i, k + 1);
    u(i, k) = c * x + sc * y;
    u(i, k + 1) = c * y - s * x;
  }
}

}  // namespace

void LinearREModel::validate() const {
  const int n = size();
  if (gamma_matrix.cols() != n) throw InvalidParameter("transition matrix must be square");
  if (psi_vector.size() != n) throw InvalidParameter("shock loading has wrong length");
  if (n_pre < 0 || n_pre > n) throw InvalidParameter("n_pre outside [0, n]");
  if (!gamma_matrix.allFinite() || !psi_vector.allFinite()) {
    throw InvalidParameter("model matrices must be finite");
  }
  if (!(shock_persistence >= 0.0 && shock_persistence < 1.0)) {
    throw InvalidParameter("shock persistence must lie in [0, 1)");
  }
}

std::string to_string(Determinacy verdict) {
  switch (verdict) {
    case Determinacy::Unique: return "unique";
    case Determinacy::NoSolution: return "no-solution";
    case Determinacy::Indeterminate: return "indeterminate";
    case Determinacy::Boundary: return "boundary";
  }
  return "unknown";
}

EigenReport eigencheck(const LinearREModel& model) {
  model.validate();
  EigenReport rep;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(model.gamma_matrix.cast<cd>(), false);
  if (es.info() != Eigen::Success) throw NumericalError("eigenvalue computation failed");
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const cd z = es.eigenvalues()(i);
    rep.spectrum.push_back(z);
    const double r = std::abs(z);
    if (std::abs(r - 1.0) <= kUnitCircleTol) {
      ++rep.n_boundary;
    } else if (r < 1.0) {
      ++rep.n_stable;
    } else {
      ++rep.n_unstable;
    }
  }
  std::sort(rep.spectrum.begin(), rep.spectrum.end(), [](cd a, cd b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return a.imag() < b.imag();
  });
  if (rep.n_boundary > 0) {
    rep.verdict = Determinacy::Boundary;
  } else if (rep.n_unstable > model.n_jump()) {
    rep.verdict = Determinacy::NoSolution;
  } else if (rep.n_unstable < model.n_jump()) {
    rep.verdict = Determinacy::Indeterminate;
  } else {
    rep.verdict = Determinacy::Unique;
  }
  return rep;
}

int ordered_schur(const Eigen::MatrixXd& matrix, bool (*selected)(cd), Eigen::MatrixXcd& unitary,
                  Eigen::MatrixXcd& triangular) {
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(matrix.cast<cd>());
  if (schur.info() != Eigen::Success) throw NumericalError("Schur decomposition failed");
  unitary = schur.matrixU();
  triangular = schur.matrixT();
  const int n = static_cast<int>(matrix.rows());
  int placed = 0;
  for (int j = 0; j < n; ++j) {
    if (!selected(triangular(j, j))) continue;
    for (int k = j - 1; k >= placed; --k) swap_diagonal(triangular, unitary, k);
    ++placed;
  }
  return placed;
}

Eigen::VectorXd DecisionRule::state(const Eigen::VectorXd& pre, double shock) const {
  const int np = n_pre;
  const int nj = static_cast<int>(jump_map.rows());
  Eigen::VectorXd z(np + 1);
  z << pre, shock;
  Eigen::VectorXd x(np + nj);
  x.head(np) = pre;
  x.tail(nj) = jump_map * z;
  return x;
}

DecisionRule solve(const LinearREModel& model) {
  const EigenReport rep = eigencheck(model);
  const int n = model.size();
  const int np = model.n_pre;
  const int nj = model.n_jump();
  std::ostringstream why;
  why << rep.n_stable << " stable, " << rep.n_unstable << " unstable, " << rep.n_boundary
      << " boundary eigenvalues for " << nj << " jump variables";
  switch (rep.verdict) {
    case Determinacy::Boundary: throw BoundaryEigenvalue(why.str());
    case Determinacy::NoSolution: throw NoSolution(why.str());
    case Determinacy::Indeterminate: throw Indeterminate(why.str());
    case Determinacy::Unique: break;
  }

  Eigen::MatrixXcd u;
  Eigen::MatrixXcd t;
  const int ns = ordered_schur(model.gamma_matrix, inside_unit_circle, u, t);
  if (ns != np) throw NumericalError("Schur reordering lost track of the stable block");

  const double mu = model.shock_persistence;
  Eigen::MatrixXcd jump_c(nj, np + 1);
  if (nj > 0) {
    const Eigen::MatrixXcd u2 = u.rightCols(nj).adjoint();  // nj x n
    const Eigen::MatrixXcd t22 = t.bottomRightCorner(nj, nj);
    const Eigen::VectorXcd load = u2 * model.psi_vector.cast<cd>();

    // Non-explosive unstable coordinates z2(t) = c ω(t) with μ c = T22 c + U2* Ψ.
    const Eigen::MatrixXcd shifted = mu * Eigen::MatrixXcd::Identity(nj, nj) - t22;
    const Eigen::VectorXcd c = shifted.partialPivLu().solve(load);

    Eigen::FullPivLU<Eigen::MatrixXcd> jump_lu(u2.rightCols(nj));
    if (!jump_lu.isInvertible()) {
      throw SingularMatrix("unstable block does not pin down the jump variables");
    }
    jump_c.leftCols(np) = -jump_lu.solve(u2.leftCols(np));
    jump_c.col(np) = jump_lu.solve(c);

    const double imag = jump_c.imag().cwiseAbs().maxCoeff();
    if (imag > kRuleResidualTol) {
      std::ostringstream msg;
      msg << "decision rule has imaginary part " << imag;
      throw VerificationFailure(msg.str());
    }
  }

  DecisionRule rule;
  rule.n_pre = np;
  rule.shock_persistence = mu;
  rule.eigenvalues = rep.spectrum;
  rule.jump_map = jump_c.real();

  // p(t+1) = [Γ x(t) + Ψ ω(t)]_pre with x(t) = [p; J [p; ω]].
  Eigen::MatrixXd full(n, np + 1);
  full.setZero();
  full.topLeftCorner(np, np).setIdentity();
  full.bottomRows(nj) = rule.jump_map;
  Eigen::MatrixXd forced = model.gamma_matrix * full;
  forced.col(np) += model.psi_vector;
  rule.pre_transition = forced.topRows(np);

  rule.verified_residual = rule_residual(model, rule);
  if (!(rule.verified_residual <= kRuleResidualTol)) {
    std::ostringstream msg;
    msg << "decision rule residual " << rule.verified_residual << " exceeds " << kRuleResidualTol;
    throw VerificationFailure(msg.str());
  }
  return rule;
}

double rule_residual(const LinearREModel& model, const DecisionRule& rule, int draws,
                     unsigned seed) {
  const int np = rule.n_pre;
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double worst = 0.0;
  for (int d = 0; d < draws; ++d) {
    Eigen::VectorXd pre(np);
    for (int i = 0; i < np; ++i) pre(i) = unit(gen);
    const double w = unit(gen);
    Eigen::VectorXd z(np + 1);
    z << pre, w;
    const Eigen::VectorXd x = rule.state(pre, w);
    const Eigen::VectorXd pre_next = rule.pre_transition * z;
    const Eigen::VectorXd x_next = rule.state(pre_next, model.shock_persistence * w);
    const Eigen::VectorXd r = x_next - model.gamma_matrix * x - model.psi_vector * w;
    worst = std::max(worst, r.cwiseAbs().maxCoeff());
  }
  return worst;
}

Eigen::MatrixXd impulse_response(const DecisionRule& rule, double shock_size, int horizon,
                                 Eigen::VectorXd* forcing) {
  if (horizon < 1) throw InvalidParameter("horizon must be at least 1");
  const int np = rule.n_pre;
  const int n = np + static_cast<int>(rule.jump_map.rows());
  Eigen::MatrixXd paths(horizon, n);
  if (forcing) forcing->resize(horizon);
  Eigen::VectorXd pre = Eigen::VectorXd::Zero(np);
  double w = shock_size;
  for (int t = 0; t < horizon; ++t) {
    paths.row(t) = rule.state(pre, w).transpose();
    if (forcing) (*forcing)(t) = w;
    Eigen::VectorXd z(np + 1);
    z << pre, w;
    pre = rule.pre_transition * z;
    w *= rule.shock_persistence;
  }
  return paths;
}

}  // namespace fairprice
