#include "entropic/face_distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entropic/error.hpp"

namespace entropic {

double l1_distance_to_segment(const Vector& x, const Vector& p, const Vector& q) {
  const Vector r = x - q;
  const Vector s = p - q;
  auto f = [&](double lam) { return (r - lam * s).cwiseAbs().sum(); };
  double best = std::min(f(0.0), f(1.0));
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) == 0.0) continue;
    const double lam = r(i) / s(i);
    if (lam > 0.0 && lam < 1.0) best = std::min(best, f(lam));
  }
  return best;
}

namespace {

class Tableau {
 public:
  Tableau(Matrix rows, Vector cost) : t_(std::move(rows)), cost_(std::move(cost)) {}

  void pivot(Eigen::Index row, Eigen::Index col) {
    t_.row(row) /= t_(row, col);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i != row && t_(i, col) != 0.0) t_.row(i) -= t_(i, col) * t_.row(row);
    }
    basis_[row] = col;
  }

  void set_basis(std::vector<Eigen::Index> basis) {
    basis_ = std::move(basis);
    for (Eigen::Index r = 0; r < t_.rows(); ++r) pivot(r, basis_[r]);
  }

  // Bland's rule; the objective is bounded below by zero here.
  void optimize() {
    constexpr double eps = 1e-12;
    const Eigen::Index nv = t_.cols() - 1;
    for (int guard = 0; guard < 100000; ++guard) {
      Vector reduced = cost_;
      for (Eigen::Index r = 0; r < t_.rows(); ++r) reduced -= cost_(basis_[r]) * t_.row(r).head(nv).transpose();
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < nv; ++j) {
        if (reduced(j) < -eps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return;
      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index r = 0; r < t_.rows(); ++r) {
        if (t_(r, enter) <= eps) continue;
        const double ratio = t_(r, nv) / t_(r, enter);
        if (ratio < best - eps || (ratio <= best + eps && leave >= 0 && basis_[r] < basis_[leave])) {
          best = std::min(best, ratio);
          leave = r;
        }
      }
      if (leave < 0) throw Error(ErrorCode::not_converged, "face distance program unbounded");
      pivot(leave, enter);
    }
    throw Error(ErrorCode::not_converged, "face distance simplex exceeded its iteration guard");
  }

  Vector solution() const {
    const Eigen::Index nv = t_.cols() - 1;
    Vector v = Vector::Zero(nv);
    for (Eigen::Index r = 0; r < t_.rows(); ++r) v(basis_[r]) = std::max(0.0, t_(r, nv));
    return v;
  }

 private:
  Matrix t_;
  Vector cost_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

double l1_distance_to_hull(const Vector& x, const std::vector<Vector>& points) {
  if (points.empty()) throw Error(ErrorCode::invalid_input, "empty point set");
  const Eigen::Index n = x.size();
  const Eigen::Index k = static_cast<Eigen::Index>(points.size());
  if (k == 1) return (x - points[0]).cwiseAbs().sum();

  // Columns: w (k), s (n), t (n), rhs.
  const Eigen::Index nv = k + 2 * n;
  Matrix rows = Matrix::Zero(n + 1, nv + 1);
  for (Eigen::Index j = 0; j < k; ++j) {
    rows.col(j).head(n) = points[j];
    rows(n, j) = 1.0;
  }
  rows.block(0, k, n, n).setIdentity();
  rows.block(0, k + n, n, n) = -Matrix::Identity(n, n);
  rows.col(nv).head(n) = x;
  rows(n, nv) = 1.0;

  Vector cost = Vector::Zero(nv);
  cost.segment(k, 2 * n).setOnes();

  std::vector<Eigen::Index> basis(n + 1);
  basis[n] = 0;
  for (Eigen::Index i = 0; i < n; ++i) basis[i] = (x(i) - points[0](i) >= 0.0) ? k + i : k + n + i;
  Tableau tab(std::move(rows), std::move(cost));
  tab.set_basis(std::move(basis));
  tab.optimize();

  const Vector sol = tab.solution();
  Vector z = Vector::Zero(n);
  double wsum = 0.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    z += sol(j) * points[j];
    wsum += sol(j);
  }
  if (wsum > 0.0) z /= wsum;
  return (x - z).cwiseAbs().sum();
}

double face_distance(const Vector& x, const PolytopeProfile& prof) {
  std::vector<Vector> face;
  for (auto k : prof.optimal_vertices) face.push_back(prof.vertices[k]);
  if (face.size() == 2) return l1_distance_to_segment(x, face[0], face[1]);
  return l1_distance_to_hull(x, face);
}

}  // namespace entropic
