#include "dhgl/prox.hpp"

#include <cmath>
#include <stdexcept>

namespace dhgl {

std::pair<double, double> pd_split_scalar(double x, double gamma) {
  // Evaluate the non-cancelling branch, recover the other from pos*neg=gamma.
  const double s = std::sqrt(x * x + 4.0 * gamma);
  if (x >= 0.0) {
    const double pos = 0.5 * (s + x);
    return {pos, gamma / pos};
  }
  const double neg = 0.5 * (s - x);
  return {gamma / neg, neg};
}

std::pair<Vector, Vector> pd_split_spectrum(const Vector& d, double gamma) {
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("pd_split: gamma must be positive");
  }
  Vector pos(d.size()), neg(d.size());
  for (Index i = 0; i < d.size(); ++i) {
    auto [p, n] = pd_split_scalar(d(i), gamma);
    pos(i) = p;
    neg(i) = n;
  }
  return {std::move(pos), std::move(neg)};
}

SymMatrix assemble(const EigenDecomposition& ed, const Vector& vals) {
  Matrix R = ed.vecs * vals.asDiagonal() * ed.vecs.transpose();
  return SymMatrix::FromExact(((R + R.transpose()) * 0.5).eval());
}

std::pair<SymMatrix, SymMatrix> pd_split(const SymMatrix& X, double gamma) {
  const EigenDecomposition ed = eig_sym(X);
  auto [pos, neg] = pd_split_spectrum(ed.vals, gamma);
  return {assemble(ed, pos), assemble(ed, neg)};
}

SymMatrix pd_split_pos(const SymMatrix& X, double gamma) {
  const EigenDecomposition ed = eig_sym(X);
  auto [pos, neg] = pd_split_spectrum(ed.vals, gamma);
  return assemble(ed, pos);
}

SymMatrix pd_split_neg(const SymMatrix& X, double gamma) {
  const EigenDecomposition ed = eig_sym(X);
  auto [pos, neg] = pd_split_spectrum(ed.vals, gamma);
  return assemble(ed, neg);
}

SymMatrix prox_logdet(const SymMatrix& G, double sigma) {
  return pd_split_pos(G, sigma);
}

double logdet_envelope(const SymMatrix& G, double sigma) {
  const EigenDecomposition ed = eig_sym(G);
  auto [pos, neg] = pd_split_spectrum(ed.vals, sigma);
  return neg.squaredNorm() / (2.0 * sigma) - pos.array().log().sum();
}

Vector proj_linf(const Vector& y, double radius) {
  return y.cwiseMax(-radius).cwiseMin(radius);
}

Vector proj_l2(const Vector& y, double radius) {
  const double n = y.norm();
  if (n <= radius) return y;
  return (radius / n) * y;
}

namespace {

inline double soft(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

}  // namespace

SymMatrix prox_edge_l1(const SymMatrix& Y, double lam1, double scale) {
  const double t = lam1 * scale;
  Matrix R = Y.mat();
  const Index p = R.rows();
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < p; ++i) {
      if (i != j) R(i, j) = soft(R(i, j), t);
    }
  }
  return SymMatrix::FromExact(std::move(R));
}

Matrix prox_col_l1(const Matrix& Y, const Hyperparams& hp, double scale) {
  Matrix R = Y;
  const Index p = R.rows();
  for (Index j = 0; j < p; ++j) {
    const double t = scale * hp.w1(j);
    for (Index i = 0; i < p; ++i) {
      if (i != j) R(i, j) = soft(R(i, j), t);
    }
  }
  return R;
}

Matrix prox_col_l2(const Matrix& X, const Hyperparams& hp, double scale) {
  Matrix R = X;
  const Index p = R.rows();
  for (Index j = 0; j < p; ++j) {
    const double r = scale * hp.w2(j);
    const double diag = R(j, j);
    R(j, j) = 0.0;
    const double n = R.col(j).norm();
    if (n <= r) {
      R.col(j).setZero();
    } else {
      R.col(j) *= 1.0 - r / n;
    }
    R(j, j) = diag;
  }
  return R;
}

Matrix prox_col_sparse_group(const Matrix& Y, const Hyperparams& hp,
                             double scale) {
  return prox_col_l2(prox_col_l1(Y, hp, scale), hp, scale);
}

SymMatrix prox_edge_l1_conj(const SymMatrix& x, double lam1, double t) {
  Matrix r = prox_conj(
      [&](const Matrix& u, double s) {
        return prox_edge_l1(SymMatrix(u), lam1, s).mat();
      },
      t, x.mat());
  return SymMatrix(std::move(r));
}

Matrix prox_col_sparse_group_conj(const Matrix& x, const Hyperparams& hp,
                                  double t) {
  return prox_conj(
      [&](const Matrix& u, double s) {
        return prox_col_sparse_group(u, hp, s);
      },
      t, x);
}

double edge_l1_value(const SymMatrix& Z, double lam1) {
  const Matrix& M = Z.mat();
  double s = M.cwiseAbs().sum() - M.diagonal().cwiseAbs().sum();
  return lam1 * s;
}

double col_sparse_group_value(const Matrix& V, const Hyperparams& hp) {
  const Index p = V.rows();
  double s = 0.0;
  for (Index j = 0; j < p; ++j) {
    Vector c = offdiag_col(V, j);
    s += hp.w1(j) * c.lpNorm<1>() + hp.w2(j) * c.norm();
  }
  return s;
}

}  // namespace dhgl
