#include "gflab/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gflab {

double norm(const FiberVector& v) {
  double acc = 0.0;
  for (const cplx& z : v) acc += std::norm(z);
  return std::sqrt(acc);
}

cplx inner(const FiberVector& v, const FiberVector& w) {
  if (v.size() != w.size()) throw std::invalid_argument("fiber dimension mismatch");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += std::conj(v[i]) * w[i];
  return acc;
}

FiberVector modulus(const FiberVector& v) {
  FiberVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::abs(v[i]);
  return out;
}

bool is_finite(const FiberVector& v) {
  for (const cplx& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

FiberOperator FiberOperator::identity(int dim) {
  FiberOperator id(dim);
  for (int i = 0; i < dim; ++i) id(i, i) = 1.0;
  return id;
}

FiberOperator FiberOperator::adjoint() const {
  FiberOperator out(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) out(i, j) = std::conj((*this)(j, i));
  return out;
}

FiberVector FiberOperator::apply(const FiberVector& v) const {
  if (static_cast<int>(v.size()) != dim_)
    throw std::invalid_argument("fiber dimension mismatch");
  FiberVector out(dim_);
  for (int i = 0; i < dim_; ++i) {
    cplx acc = 0.0;
    for (int j = 0; j < dim_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

cplx FiberOperator::trace() const {
  cplx acc = 0.0;
  for (int i = 0; i < dim_; ++i) acc += (*this)(i, i);
  return acc;
}

double FiberOperator::frobenius_norm() const {
  double acc = 0.0;
  for (const cplx& z : a_) acc += std::norm(z);
  return std::sqrt(acc);
}

bool FiberOperator::is_finite() const {
  for (const cplx& z : a_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

FiberOperator& FiberOperator::operator+=(const FiberOperator& o) {
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

FiberOperator& FiberOperator::operator-=(const FiberOperator& o) {
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

FiberOperator& FiberOperator::operator*=(cplx c) {
  for (cplx& z : a_) z *= c;
  return *this;
}

FiberOperator operator+(FiberOperator a, const FiberOperator& b) { return a += b; }
FiberOperator operator-(FiberOperator a, const FiberOperator& b) { return a -= b; }

FiberOperator operator*(const FiberOperator& a, const FiberOperator& b) {
  const int d = a.dim();
  FiberOperator out(d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0)) continue;
      for (int j = 0; j < d; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

FiberOperator operator*(cplx c, FiberOperator a) { return a *= c; }

FiberOperator operator-(FiberOperator a) { return a *= cplx(-1.0); }

std::vector<double> hermitian_eigenvalues(const FiberOperator& a) {
  const int d = a.dim();
  // Hermitian part: eigenvalues shift by at most the discarded defect norm.
  FiberOperator h(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));

  const double frob = h.frobenius_norm();
  const int max_sweeps = 40;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < d; ++p)
      for (int q = p + 1; q < d; ++q) off += std::norm(h(p, q));
    if (std::sqrt(2.0 * off) <= 1e-15 * (frob + 1e-300)) break;

    for (int p = 0; p < d - 1; ++p) {
      for (int q = p + 1; q < d; ++q) {
        const cplx apq = h(p, q);
        const double aab = std::abs(apq);
        if (aab == 0.0) continue;
        const double app = h(p, p).real();
        const double aqq = h(q, q).real();
        const double tau = (aqq - app) / (2.0 * aab);
        const double t =
            (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                         : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx phase = apq / aab;

        // J = identity except J_pp=c, J_pq=s, J_qp=-s*conj(phase),
        // J_qq=c*conj(phase); apply A <- J^dagger A J.
        for (int i = 0; i < d; ++i) {  // columns
          const cplx hip = h(i, p), hiq = h(i, q);
          h(i, p) = c * hip - s * std::conj(phase) * hiq;
          h(i, q) = s * hip + c * std::conj(phase) * hiq;
        }
        for (int i = 0; i < d; ++i) {  // rows
          const cplx hpi = h(p, i), hqi = h(q, i);
          h(p, i) = c * hpi - s * phase * hqi;
          h(q, i) = s * hpi + c * phase * hqi;
        }
        h(p, q) = 0.0;
        h(q, p) = 0.0;
      }
    }
  }

  std::vector<double> eig(d);
  for (int i = 0; i < d; ++i) eig[i] = h(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

double operator_norm(const FiberOperator& a) {
  const int d = a.dim();
  if (d == 0) return 0.0;
  const FiberOperator gram = a.adjoint() * a;
  const std::vector<double> eig = hermitian_eigenvalues(gram);
  return std::sqrt(std::max(0.0, eig.back()));
}

FiberOperator matrix_exp(const FiberOperator& a) {
  if (!a.is_finite()) throw std::invalid_argument("matrix exp: non-finite entries");
  const int d = a.dim();

  // scale so the Taylor series converges fast, then square back
  int squarings = 0;
  double scale = operator_norm(a);
  while (scale > 0.25 && squarings < 60) {
    scale *= 0.5;
    ++squarings;
  }
  FiberOperator x = a;
  x *= cplx(std::ldexp(1.0, -squarings));

  FiberOperator result = FiberOperator::identity(d);
  FiberOperator term = FiberOperator::identity(d);
  for (int k = 1; k <= 20; ++k) {
    term = term * x;
    term *= cplx(1.0 / k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

Projection::Projection(FiberOperator op, const Tolerances& tol) : op_(std::move(op)) {
  const int d = op_.dim();
  if (d < 1) throw std::invalid_argument("projection: empty operator");
  if (!op_.is_finite()) throw std::invalid_argument("projection: non-finite entries");
  if (operator_norm(op_ - op_.adjoint()) > tol.algebraic)
    throw std::invalid_argument("projection: not Hermitian");
  if (operator_norm(op_ * op_ - op_) > tol.algebraic)
    throw std::invalid_argument("projection: not idempotent");
  rank_ = 0;
  for (double lambda : hermitian_eigenvalues(op_)) {
    if (std::abs(lambda) <= tol.ideal) continue;
    if (std::abs(lambda - 1.0) <= tol.ideal) {
      ++rank_;
      continue;
    }
    throw std::invalid_argument("projection: eigenvalue away from {0,1}");
  }
}

Projection project_onto_span(const std::vector<FiberVector>& vectors,
                             const Tolerances& tol) {
  if (vectors.empty()) throw std::invalid_argument("empty span");
  const std::size_t d = vectors.front().size();
  if (d == 0) throw std::invalid_argument("empty span");

  std::vector<FiberVector> basis;
  for (const FiberVector& v : vectors) {
    if (v.size() != d) throw std::invalid_argument("fiber dimension mismatch");
    if (!is_finite(v)) throw std::invalid_argument("non-finite span vector");
    FiberVector w = v;
    // two passes of projection-out keep orthogonality at machine level even
    // for nearly dependent inputs
    for (int pass = 0; pass < 2; ++pass) {
      for (const FiberVector& u : basis) {
        const cplx coeff = inner(u, w);
        for (std::size_t i = 0; i < d; ++i) w[i] -= coeff * u[i];
      }
    }
    const double r = norm(w);
    if (r < tol.algebraic) continue;  // dependent direction, rank unchanged
    for (cplx& z : w) z /= r;
    basis.push_back(std::move(w));
  }
  if (basis.empty()) throw std::invalid_argument("empty span");

  FiberOperator p(static_cast<int>(d));
  for (const FiberVector& u : basis)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        p(static_cast<int>(i), static_cast<int>(j)) += u[i] * std::conj(u[j]);
  return Projection(std::move(p), tol);
}

Projection complement(const Projection& p) {
  return Projection(FiberOperator::identity(p.dim()) - p.op());
}

}  // namespace gflab
