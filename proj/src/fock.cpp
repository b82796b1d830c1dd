#include "carlab/fock.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>

namespace carlab {

namespace {
std::atomic<int> g_dense_cap{10};
}  // namespace

int dense_mode_cap() { return g_dense_cap.load(); }

void set_dense_mode_cap(int cap) {
  if (cap < 1 || cap > kHardModeCap)
    throw std::domain_error("dense mode cap must lie in [1, " + std::to_string(kHardModeCap) +
                            "], got " + std::to_string(cap));
  g_dense_cap.store(cap);
}

std::size_t fock_dimension(int mode_count) {
  if (mode_count < 1) throw std::domain_error("mode count must be >= 1");
  const int cap = dense_mode_cap();
  if (mode_count > cap)
    throw std::domain_error(
        "mode count " + std::to_string(mode_count) + " exceeds the dense cap " +
        std::to_string(cap) + " (a 2^m x 2^m matrix would be needed); raise the cap with "
        "set_dense_mode_cap / --max-modes / CARLAB_MAX_MODES, hard maximum " +
        std::to_string(kHardModeCap));
  return std::size_t{1} << mode_count;
}

Matrix elementary_annihilator(const ModeSpace& space, int mode) {
  const int m = space.mode_count();
  if (mode < 0 || mode >= m)
    throw std::out_of_range("mode index " + std::to_string(mode) + " out of range [0, " +
                            std::to_string(m) + ")");
  const std::size_t dim = fock_dimension(m);
  Matrix out = Matrix::Zero(dim, dim);
  const BasisState bit = BasisState{1} << mode;
  for (BasisState k = 0; k < dim; ++k) {
    if (k & bit) out(k ^ bit, k) = static_cast<double>(jw_sign(k, mode));
  }
  return out;
}

Matrix elementary_creator(const ModeSpace& space, int mode) {
  return elementary_annihilator(space, mode).adjoint();
}

void apply_smeared(const Vector& coeffs, bool dagger, const Vector& in, Vector& out) {
  const int m = static_cast<int>(coeffs.size());
  const std::size_t dim = in.size();
  out.setZero(dim);
  if (dagger) {
    // (a(f)* x)[K] = sum_{i in K} f~_i sign(K,i) x[K without i]
    for (int i = 0; i < m; ++i) {
      const Complex c = coeffs[i];
      if (c == Complex{0.0, 0.0}) continue;
      const BasisState bit = BasisState{1} << i;
      for (BasisState k = 0; k < dim; ++k) {
        if (k & bit) out[k] += c * static_cast<double>(jw_sign(k, i)) * in[k ^ bit];
      }
    }
  } else {
    // (a(f) x)[K] = sum_{i not in K} conj(f~_i) sign(K,i) x[K with i]
    for (int i = 0; i < m; ++i) {
      const Complex c = std::conj(coeffs[i]);
      if (c == Complex{0.0, 0.0}) continue;
      const BasisState bit = BasisState{1} << i;
      for (BasisState k = 0; k < dim; ++k) {
        if (!(k & bit)) out[k] += c * static_cast<double>(jw_sign(k, i)) * in[k | bit];
      }
    }
  }
}

Matrix smear(const ModeSpace& space, const FieldVector& f) {
  check_field(space, f);
  const int m = space.mode_count();
  const std::size_t dim = fock_dimension(m);
  const Vector d = to_standard(space, f);
  Matrix out = Matrix::Zero(dim, dim);
  for (int i = 0; i < m; ++i) {
    const Complex c = std::conj(d[i]);
    if (c == Complex{0.0, 0.0}) continue;
    const BasisState bit = BasisState{1} << i;
    for (BasisState k = 0; k < dim; ++k) {
      if (k & bit) out(k ^ bit, k) += c * static_cast<double>(jw_sign(k, i));
    }
  }
  return out;
}

SparseState& SparseState::operator*=(Complex scale) {
  for (auto& [state, amp] : terms) amp *= scale;
  return *this;
}

namespace {
void canonicalize(SparseState& s) {
  std::sort(s.terms.begin(), s.terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < s.terms.size(); ++r) {
    if (w > 0 && s.terms[w - 1].first == s.terms[r].first) {
      s.terms[w - 1].second += s.terms[r].second;
    } else {
      s.terms[w++] = s.terms[r];
    }
  }
  s.terms.resize(w);
}
}  // namespace

SparseState apply_smeared(const Vector& coeffs, bool dagger, const SparseState& in,
                          int mode_count) {
  SparseState out;
  out.terms.reserve(in.terms.size() * mode_count);
  for (const auto& [k, amp] : in.terms) {
    for (int i = 0; i < mode_count; ++i) {
      const BasisState bit = BasisState{1} << i;
      if (dagger) {
        if (k & bit) continue;
        const Complex c = coeffs[i];
        if (c == Complex{0.0, 0.0}) continue;
        out.terms.emplace_back(k | bit, amp * c * static_cast<double>(jw_sign(k, i)));
      } else {
        if (!(k & bit)) continue;
        const Complex c = std::conj(coeffs[i]);
        if (c == Complex{0.0, 0.0}) continue;
        out.terms.emplace_back(k ^ bit, amp * c * static_cast<double>(jw_sign(k, i)));
      }
    }
  }
  canonicalize(out);
  return out;
}

SparseState add(const SparseState& x, const SparseState& y) {
  SparseState out;
  out.terms.reserve(x.terms.size() + y.terms.size());
  out.terms.insert(out.terms.end(), x.terms.begin(), x.terms.end());
  out.terms.insert(out.terms.end(), y.terms.begin(), y.terms.end());
  canonicalize(out);
  return out;
}

double distance_squared(const SparseState& x, const SparseState& y) {
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < x.terms.size() || j < y.terms.size()) {
    if (j >= y.terms.size() || (i < x.terms.size() && x.terms[i].first < y.terms[j].first)) {
      sum += std::norm(x.terms[i].second);
      ++i;
    } else if (i >= x.terms.size() || y.terms[j].first < x.terms[i].first) {
      sum += std::norm(y.terms[j].second);
      ++j;
    } else {
      sum += std::norm(x.terms[i].second - y.terms[j].second);
      ++i;
      ++j;
    }
  }
  return sum;
}

Matrix monomial_operator(const ModeSpace& space, const Monomial& monomial) {
  const int m = space.mode_count();
  const std::size_t dim = fock_dimension(m);
  std::vector<Vector> std_coeffs;
  std_coeffs.reserve(monomial.creators.size() + monomial.annihilators.size());
  // Factor order: creators then annihilators; the rightmost factor acts first.
  for (const FieldVector& f : monomial.creators) {
    check_field(space, f);
    std_coeffs.push_back(to_standard(space, f));
  }
  for (const FieldVector& g : monomial.annihilators) {
    check_field(space, g);
    std_coeffs.push_back(to_standard(space, g));
  }
  const std::size_t n_creators = monomial.creators.size();

  Matrix out = Matrix::Zero(dim, dim);
  for (BasisState l = 0; l < dim; ++l) {
    SparseState st = SparseState::basis(l);
    for (std::size_t idx = std_coeffs.size(); idx-- > 0 && !st.terms.empty();) {
      st = apply_smeared(std_coeffs[idx], idx < n_creators, st, m);
    }
    for (const auto& [k, amp] : st.terms) out(k, l) = amp;
  }
  return out;
}

Vector fock_state(const ModeSpace& space, const std::vector<int>& occupied) {
  const int m = space.mode_count();
  const std::size_t dim = fock_dimension(m);
  BasisState k = 0;
  for (int mode : occupied) {
    if (mode < 0 || mode >= m)
      throw std::out_of_range("mode index " + std::to_string(mode) + " out of range [0, " +
                              std::to_string(m) + ")");
    k |= BasisState{1} << mode;
  }
  Vector v = Vector::Zero(dim);
  v[k] = Complex{1.0, 0.0};
  return v;
}

Vector vacuum_state(const ModeSpace& space) { return fock_state(space, {}); }

Matrix number_operator(const ModeSpace& space) {
  const std::size_t dim = fock_dimension(space.mode_count());
  Matrix out = Matrix::Zero(dim, dim);
  for (BasisState k = 0; k < dim; ++k) out(k, k) = static_cast<double>(std::popcount(k));
  return out;
}

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.adjoint() * a, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

Matrix smeared_product_left(const Vector& coeffs, bool dagger, const Matrix& b) {
  const std::size_t dim = b.rows();
  Matrix out = Matrix::Zero(dim, b.cols());
  Vector col(dim);
  for (Eigen::Index l = 0; l < b.cols(); ++l) {
    apply_smeared(coeffs, dagger, b.col(l), col);
    out.col(l) = col;
  }
  return out;
}

Matrix smeared_product_right(const Matrix& b, const Vector& coeffs, bool dagger) {
  const std::size_t dim = b.cols();
  const int m = static_cast<int>(coeffs.size());
  Matrix out = Matrix::Zero(b.rows(), dim);
  if (!dagger) {
    // (b . a_i) col K = sign(K,i) b.col(K without i), i in K
    for (int i = 0; i < m; ++i) {
      const Complex c = std::conj(coeffs[i]);
      if (c == Complex{0.0, 0.0}) continue;
      const BasisState bit = BasisState{1} << i;
      for (BasisState k = 0; k < dim; ++k) {
        if (k & bit) out.col(k) += c * static_cast<double>(jw_sign(k, i)) * b.col(k ^ bit);
      }
    }
  } else {
    // (b . a_i*) col K = sign(K,i) b.col(K with i), i not in K
    for (int i = 0; i < m; ++i) {
      const Complex c = coeffs[i];
      if (c == Complex{0.0, 0.0}) continue;
      const BasisState bit = BasisState{1} << i;
      for (BasisState k = 0; k < dim; ++k) {
        if (!(k & bit)) out.col(k) += c * static_cast<double>(jw_sign(k, i)) * b.col(k | bit);
      }
    }
  }
  return out;
}

}  // namespace carlab
