#pragma once

// Dense real symmetric matrices with a self-contained cyclic Jacobi
// eigensolver, Kronecker products, and the diagonal of the matrix absolute
// value of a shifted matrix (the spectral form of vertex energy).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace divspec {

// Largest matrix dimension accepted by default. Cyclic Jacobi is O(N^3) per
// sweep; this guards runaway tau(n).
inline constexpr std::size_t kDefaultDimCap = 4096;

// A requested matrix dimension exceeds the configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The Jacobi iteration did not reach its convergence threshold within the
// sweep budget. Does not occur for 0/1 adjacency matrices at desk scale.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SymmetricMatrix {
 public:
  // Zero matrix of the given dimension.
  explicit SymmetricMatrix(std::size_t dim)
      : dim_(dim), entries_(checked_size(dim), 0.0) {}

  // Row-major entries; rejects any exact asymmetry.
  SymmetricMatrix(std::size_t dim, std::vector<double> entries)
      : dim_(dim), entries_(std::move(entries)) {
    checked_size(dim);
    if (entries_.size() != dim * dim) {
      throw std::invalid_argument("SymmetricMatrix: entries size " +
                                  std::to_string(entries_.size()) +
                                  " does not match dim " + std::to_string(dim));
    }
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = i + 1; j < dim_; ++j) {
        if (entries_[i * dim_ + j] != entries_[j * dim_ + i]) {
          throw std::invalid_argument(
              "SymmetricMatrix: entries are not symmetric at (" +
              std::to_string(i) + ", " + std::to_string(j) + ")");
        }
      }
    }
  }

  static SymmetricMatrix identity(std::size_t dim) {
    SymmetricMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.set(i, i, 1.0);
    return m;
  }

  std::size_t dim() const { return dim_; }

  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * dim_ + j];
  }

  // Writes both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double value) {
    entries_[i * dim_ + j] = value;
    entries_[j * dim_ + i] = value;
  }

  const std::vector<double>& entries() const { return entries_; }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += entries_[i * dim_ + i];
    return t;
  }

  // max_ij |a_ij|
  double max_abs() const {
    double m = 0.0;
    for (double e : entries_) m = std::max(m, std::abs(e));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double e : entries_) s += e * e;
    return std::sqrt(s);
  }

  friend bool operator==(const SymmetricMatrix&,
                         const SymmetricMatrix&) = default;

 private:
  static std::size_t checked_size(std::size_t dim) {
    if (dim == 0) {
      throw std::invalid_argument("SymmetricMatrix: dimension must be >= 1");
    }
    return dim * dim;
  }

  std::size_t dim_;
  std::vector<double> entries_;
};

// Full spectrum of a symmetric matrix. Eigenvalues are sorted descending and
// column j of the row-major `vectors` matrix is the unit eigenvector of
// eigenvalues[j].
struct SpectralDecomposition {
  std::size_t dim = 0;
  std::vector<double> eigenvalues;
  std::vector<double> vectors;

  // Coordinate i of eigenvector j.
  double vec(std::size_t i, std::size_t j) const { return vectors[i * dim + j]; }

  double eigenvalue_sum() const {
    return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);
  }
};

// Block Kronecker product: entry ((i*dimB + k), (j*dimB + l)) = A[i][j] * B[k][l].
inline SymmetricMatrix kronecker(const SymmetricMatrix& a,
                                 const SymmetricMatrix& b,
                                 std::size_t cap = kDefaultDimCap) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  if (na > cap / nb) {
    throw CapExceeded("kronecker: result dimension " + std::to_string(na) +
                      " x " + std::to_string(nb) + " exceeds cap " +
                      std::to_string(cap));
  }
  const std::size_t n = na * nb;
  SymmetricMatrix out(n);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t k = 0; k < nb; ++k) {
        for (std::size_t l = 0; l < nb; ++l) {
          out.set(i * nb + k, j * nb + l, aij * b(k, l));
        }
      }
    }
  }
  return out;
}

// Cyclic Jacobi rotations over the full matrix. Converged once the
// off-diagonal Frobenius norm drops below 1e-13 * max(1, ||A||_F); sweep
// budget 100. Deterministic for a fixed input: fixed sweep order, ties in the
// descending eigenvalue sort broken by Jacobi output order, and each
// eigenvector column signed so its largest-magnitude entry is positive.
inline SpectralDecomposition eigen_symmetric(const SymmetricMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<double> a = m.entries();
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const double threshold = 1e-13 * std::max(1.0, m.frobenius_norm());
  auto off_norm = [&a, n]() {
    double s = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        s += 2.0 * a[p * n + q] * a[p * n + q];
      }
    }
    return std::sqrt(s);
  };

  int sweeps = 0;
  while (off_norm() >= threshold) {
    if (sweeps++ == 100) {
      throw ConvergenceError(
          "eigen_symmetric: off-diagonal norm above threshold after 100 "
          "sweeps (dim " +
          std::to_string(n) + ")");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;

        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = std::copysign(1.0, theta) /
              (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = a[r * n + p];
            const double arq = a[r * n + q];
            a[r * n + p] = arp - s * (arq + tau * arp);
            a[p * n + r] = a[r * n + p];
            a[r * n + q] = arq + s * (arp - tau * arq);
            a[q * n + r] = a[r * n + q];
          }
          const double vrp = v[r * n + p];
          const double vrq = v[r * n + q];
          v[r * n + p] = vrp - s * (vrq + tau * vrp);
          v[r * n + q] = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a, n](std::size_t i, std::size_t j) {
                     return a[i * n + i] > a[j * n + j];
                   });

  SpectralDecomposition out;
  out.dim = n;
  out.eigenvalues.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.eigenvalues[j] = a[src * n + src];
    std::size_t arg_max = 0;
    double max_mag = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double mag = std::abs(v[i * n + src]);
      if (mag > max_mag) {
        max_mag = mag;
        arg_max = i;
      }
    }
    const double sign = v[arg_max * n + src] < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      out.vectors[i * n + j] = sign * v[i * n + src];
    }
  }
  return out;
}

// Diagonal of |A - mu I| computed through the spectral decomposition:
// d_i = sum_j |lambda_j - mu| * U[i][j]^2. The projector sum runs over the
// full orthonormal basis, so the result is well defined under eigenvalue
// degeneracy.
inline std::vector<double> shifted_abs_diagonal(const SpectralDecomposition& s,
                                                double mu) {
  std::vector<double> d(s.dim, 0.0);
  for (std::size_t j = 0; j < s.dim; ++j) {
    const double weight = std::abs(s.eigenvalues[j] - mu);
    for (std::size_t i = 0; i < s.dim; ++i) {
      const double u = s.vec(i, j);
      d[i] += weight * u * u;
    }
  }
  return d;
}

// Classification cutoff below which a computed eigenvalue counts as the
// theoretical zero eigenvalue.
inline double zero_eigenvalue_threshold(double frobenius_norm) {
  return 1e-8 * std::max(1.0, frobenius_norm);
}

inline std::size_t zero_eigenvalue_count(const SpectralDecomposition& s,
                                         double frobenius_norm) {
  const double cutoff = zero_eigenvalue_threshold(frobenius_norm);
  return static_cast<std::size_t>(
      std::count_if(s.eigenvalues.begin(), s.eigenvalues.end(),
                    [cutoff](double lam) { return std::abs(lam) < cutoff; }));
}

}  // namespace divspec
