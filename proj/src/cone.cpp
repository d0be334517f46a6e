#include "fenchel/cone.hpp"

#include <algorithm>
#include <numeric>

namespace fenchel {

namespace {

constexpr double kRankTol = 1e-9;
constexpr double kSignTol = 1e-10;

std::vector<Vec> unit_generators(const std::vector<Vec>& gens, int n) {
  std::vector<Vec> out;
  for (const auto& g : gens) {
    require_dim(g, n, "cone generator");
    const double nrm = g.norm();
    if (nrm < 1e-13) continue;
    Vec u = g / nrm;
    bool dup = std::any_of(out.begin(), out.end(), [&](const Vec& v) { return (v - u).norm() < 1e-12; });
    if (!dup) out.push_back(std::move(u));
  }
  return out;
}

bool next_combination(std::vector<int>& idx, int m) {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[static_cast<size_t>(i)] == m - k + i) --i;
  if (i < 0) return false;
  ++idx[static_cast<size_t>(i)];
  for (int j = i + 1; j < k; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  return true;
}

Mat stack_rows(const std::vector<Vec>& rows, int n) {
  Mat out(static_cast<Eigen::Index>(rows.size()), n);
  for (size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return out;
}

}  // namespace

ConeHRep cone_hrep(const std::vector<Vec>& generators, int n) {
  const auto gens = unit_generators(generators, n);
  ConeHRep out;
  if (gens.empty()) {
    out.equalities = Mat::Identity(n, n);
    out.facets = Mat(0, n);
    return out;
  }
  const int m = static_cast<int>(gens.size());
  Mat G(n, m);
  for (int j = 0; j < m; ++j) G.col(j) = gens[static_cast<size_t>(j)];

  Eigen::JacobiSVD<Mat> svd(G, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  int k = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) k += sv(i) > kRankTol ? 1 : 0;
  const Mat& U = svd.matrixU();
  const Mat B = U.leftCols(k);
  out.equalities = U.rightCols(n - k).transpose();

  const Mat H = B.transpose() * G;  // generators in span coordinates
  std::vector<Vec> normals;
  auto consider = [&](Vec w) {
    const double nw = w.norm();
    if (nw < 1e-14) return;
    w /= nw;
    const Eigen::RowVectorXd dots = w.transpose() * H;
    const double hi = dots.maxCoeff();
    const double lo = dots.minCoeff();
    if (hi <= kSignTol && lo < -kSignTol) {
      // already oriented
    } else if (lo >= -kSignTol && hi > kSignTol) {
      w = -w;
    } else {
      return;
    }
    Vec nrm = B * w;
    nrm.normalize();
    for (const auto& e : normals) {
      if ((e - nrm).norm() < 1e-9) return;
    }
    normals.push_back(std::move(nrm));
  };

  if (k == 1) {
    consider(Vec::Ones(1));
  } else {
    std::vector<int> idx(static_cast<size_t>(k - 1));
    if (m >= k - 1) {
      std::iota(idx.begin(), idx.end(), 0);
      Mat S(k - 1, k);
      do {
        for (int r = 0; r < k - 1; ++r) S.row(r) = H.col(idx[static_cast<size_t>(r)]).transpose();
        Eigen::FullPivLU<Mat> lu(S);
        lu.setThreshold(1e-10);
        if (lu.rank() != k - 1) continue;
        const Mat ker = lu.kernel();
        if (ker.cols() != 1) continue;
        consider(ker.col(0));
      } while (next_combination(idx, m));
    }
  }
  // Deterministic order independent of enumeration details.
  std::sort(normals.begin(), normals.end(), [](const Vec& a, const Vec& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (std::abs(a(i) - b(i)) > 1e-12) return a(i) < b(i);
    }
    return false;
  });
  out.facets = stack_rows(normals, n);
  return out;
}

ConeVRep cone_vrep(const Mat& constraint_rows, int n) {
  // K = {y : A y <= 0} is the polar of cone(rows of A). With
  // cone(rows) = {z : E z = 0, F z <= 0}, polarity gives
  // K = cone(rows of F) + span(rows of E).
  std::vector<Vec> rows;
  for (Eigen::Index i = 0; i < constraint_rows.rows(); ++i) rows.emplace_back(constraint_rows.row(i).transpose());
  const ConeHRep polar = cone_hrep(rows, n);
  ConeVRep out;
  for (Eigen::Index i = 0; i < polar.facets.rows(); ++i) out.rays.emplace_back(polar.facets.row(i).transpose());
  for (Eigen::Index i = 0; i < polar.equalities.rows(); ++i) out.lines.emplace_back(polar.equalities.row(i).transpose());
  return out;
}

}  // namespace fenchel
