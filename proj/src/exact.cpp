#include "dicke/exact.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

constexpr long kDimensionGuard = 200000;
constexpr int kDenseLimit = 3000;

// Smallest eigenpair of a sparse symmetric matrix by Lanczos with full
// reorthogonalization and thick restarts on the best Ritz vector.
std::pair<double, Eigen::VectorXd> lanczos_smallest(const Eigen::SparseMatrix<double>& A,
                                                    double rel_tol) {
  const int n = static_cast<int>(A.rows());
  const int m = std::min(n, 220);  // Krylov block per restart
  const int max_restarts = 400;

  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = std::sin(1.0 + i);  // deterministic start
  v.normalize();

  double prev = 0.0;
  bool have_prev = false;

  for (int restart = 0; restart < max_restarts; ++restart) {
    std::vector<Eigen::VectorXd> basis;
    basis.reserve(m);
    Eigen::VectorXd alpha(m), beta(m);

    basis.push_back(v);
    int k = 0;
    for (; k < m; ++k) {
      Eigen::VectorXd w = A * basis[k];
      alpha[k] = basis[k].dot(w);
      w -= alpha[k] * basis[k];
      if (k > 0) w -= beta[k - 1] * basis[k - 1];
      for (const auto& q : basis) w -= q.dot(w) * q;  // full reorthogonalization
      const double nb = w.norm();
      if (k + 1 < m) {
        beta[k] = nb;
        if (nb < 1e-14) {
          ++k;
          break;  // invariant subspace
        }
        basis.push_back(w / nb);
      }
    }

    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
      T(i, i) = alpha[i];
      if (i + 1 < k) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const double theta = es.eigenvalues()[0];
    Eigen::VectorXd y = es.eigenvectors().col(0);

    Eigen::VectorXd ritz = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < k; ++i) ritz += y[i] * basis[i];
    ritz.normalize();

    const double scale = std::max(1.0, std::fabs(theta));
    const double resid = (A * ritz - theta * ritz).norm();
    if (resid < std::sqrt(rel_tol) * scale &&
        (have_prev && std::fabs(theta - prev) < rel_tol * scale)) {
      return {theta, ritz};
    }
    prev = theta;
    have_prev = true;
    v = ritz;
  }
  throw ConvergenceError("lanczos_smallest: no convergence");
}

std::pair<double, Eigen::VectorXd> smallest_eigenpair(const Eigen::SparseMatrix<double>& A,
                                                      double rel_tol) {
  if (A.rows() < kDenseLimit) {
    const Eigen::MatrixXd dense(A);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    return {es.eigenvalues()[0], es.eigenvectors().col(0)};
  }
  return lanczos_smallest(A, rel_tol);
}

}  // namespace

EdHamiltonian::EdHamiltonian(const ModelParams& p, int N, int n_max) : N_(N), n_max_(n_max) {
  if (N < 1 || n_max < 1) throw std::invalid_argument("EdHamiltonian: N and n_max must be >= 1");
  const long dim = static_cast<long>(n_max + 1) * (N + 1);
  if (dim > kDimensionGuard) {
    throw DimensionError("EdHamiltonian: (n_max+1)(N+1) exceeds the 2e5 guard");
  }
  dim_ = static_cast<int>(dim);

  const double j = 0.5 * N;
  const double sqrtN = std::sqrt(static_cast<double>(N));
  const auto jp = [&](double mval) { return std::sqrt(j * (j + 1.0) - mval * (mval + 1.0)); };

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(dim) * 3);

  const auto idx = [&](int n, int im) { return n * (N + 1) + im; };

  for (int n = 0; n <= n_max; ++n) {
    for (int im = 0; im <= N; ++im) {
      const double mval = im - j;
      const int row = idx(n, im);

      trip.emplace_back(row, row, p.omega * n + (p.Omega + p.U * n / N) * mval);

      if (n + 1 <= n_max) {
        const double ph = std::sqrt(n + 1.0);
        // a^dag J_-: |n+1, m-1>
        if (im - 1 >= 0) {
          const double el = p.lambda / sqrtN * ph * jp(mval - 1.0);
          trip.emplace_back(idx(n + 1, im - 1), row, el);
          trip.emplace_back(row, idx(n + 1, im - 1), el);
        }
        // a^dag J_+: |n+1, m+1>
        if (im + 1 <= N) {
          const double el = p.kappa / sqrtN * ph * jp(mval);
          trip.emplace_back(idx(n + 1, im + 1), row, el);
          trip.emplace_back(row, idx(n + 1, im + 1), el);
        }
      }
    }
  }

  h_.resize(dim_, dim_);
  h_.setFromTriplets(trip.begin(), trip.end());
}

EdHamiltonian build_hamiltonian(const ModelParams& p, const EdConfig& cfg) {
  return EdHamiltonian(p, cfg.N, cfg.n_max);
}

EdGround ground_state(const EdHamiltonian& h, const EdConfig& cfg) {
  const int dim = h.dim();
  std::vector<int> even, odd;
  for (int i = 0; i < dim; ++i) {
    (h.parity(i) > 0 ? even : odd).push_back(i);
  }

  const auto solve_sector = [&](const std::vector<int>& sel) {
    std::vector<int> where(dim, -1);
    for (std::size_t k = 0; k < sel.size(); ++k) where[sel[k]] = static_cast<int>(k);

    Eigen::SparseMatrix<double> block(static_cast<int>(sel.size()), static_cast<int>(sel.size()));
    std::vector<Eigen::Triplet<double>> trip;
    for (int col = 0; col < h.matrix().outerSize(); ++col) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(h.matrix(), col); it; ++it) {
        const int r = where[static_cast<int>(it.row())];
        const int c = where[col];
        if (r >= 0 && c >= 0) trip.emplace_back(r, c, it.value());
      }
    }
    block.setFromTriplets(trip.begin(), trip.end());
    return smallest_eigenpair(block, cfg.eigen_tol);
  };

  const auto [e_even, v_even] = solve_sector(even);
  const auto [e_odd, v_odd] = solve_sector(odd);

  // Pick the lower sector; break near-degenerate ties toward even parity so
  // the result stays deterministic deep in the superradiant regime.
  const double tie = cfg.eigen_tol * std::max(1.0, std::fabs(e_even));
  const bool use_even = e_even <= e_odd + tie;
  const double e0 = use_even ? e_even : e_odd;
  const std::vector<int>& sel = use_even ? even : odd;
  const Eigen::VectorXd& vec = use_even ? v_even : v_odd;

  Eigen::VectorXd psi = Eigen::VectorXd::Zero(dim);
  for (std::size_t k = 0; k < sel.size(); ++k) psi[sel[k]] = vec[static_cast<int>(k)];

  int imax = 0;
  for (int i = 1; i < dim; ++i) {
    if (std::fabs(psi[i]) > std::fabs(psi[imax])) imax = i;
  }
  if (psi[imax] < 0.0) psi = -psi;

  return {e0, psi};
}

EdResult measure(const EdHamiltonian& h, const EdGround& g) {
  const int N = h.atoms();
  const double j = 0.5 * N;

  double nbar = 0.0, jz = 0.0, jz2 = 0.0, par = 0.0, top = 0.0;
  for (int i = 0; i < h.dim(); ++i) {
    const double w = g.psi[i] * g.psi[i];
    const int n = h.fock_index(i);
    const double mval = h.spin_index(i) - j;
    nbar += n * w;
    jz += mval * w;
    jz2 += mval * mval * w;
    par += h.parity(i) * w;
    if (n == h.photon_cutoff()) top += w;
  }

  EdResult r;
  r.N = N;
  r.e0_per_atom = g.e0 / N;
  r.n_photon_per_atom = nbar / N;
  r.jz_per_atom = jz / N;
  r.jperp2 = (j * (j + 1.0) - jz2) / (static_cast<double>(N) * N);
  r.parity = par;
  r.cutoff_used = h.photon_cutoff();
  r.top_level_weight = top;
  r.cutoff_ok = nbar <= 0.5 * h.photon_cutoff();
  return r;
}

EdResult solve_adaptive(const ModelParams& p, EdConfig cfg) {
  for (;;) {
    const EdHamiltonian h(p, cfg.N, cfg.n_max);
    const EdGround g = ground_state(h, cfg);
    const EdResult r = measure(h, g);
    if (r.top_level_weight < cfg.convergence_tol) return r;
    cfg.n_max *= 2;  // DimensionError propagates once the guard is hit
  }
}

std::vector<EdResult> finite_size_scan(const ModelParams& p, const std::vector<int>& atom_counts,
                                       const EdConfig& tmpl) {
  std::vector<EdResult> out;
  out.reserve(atom_counts.size());
  for (int N : atom_counts) {
    EdConfig cfg = tmpl;
    cfg.N = N;
    out.push_back(solve_adaptive(p, cfg));
  }
  return out;
}

}  // namespace dicke
