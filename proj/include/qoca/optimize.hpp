// Copyright 2026 The qoca-workbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Derivative-free minimizers: Powell's COBYLA restricted to the unconstrained
// case, and Nelder-Mead as a cross-check.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qoca {

using ObjectiveFn = std::function<double(const Eigen::VectorXd&)>;

struct MinimizerOptions {
  double rho_begin = 0.5;
  double rho_end = 1e-6;
  std::size_t max_evals = 100000;

  void validate() const {
    if (max_evals < 1) throw std::invalid_argument("max_evals must be at least 1");
    if (!(rho_end > 0.0) || !(rho_end < rho_begin)) {
      throw std::invalid_argument("need 0 < rho_end < rho_begin");
    }
  }
};

enum class StopReason { RhoEnd, Budget };

struct MinimizerResult {
  Eigen::VectorXd x;
  double f = 0.0;
  std::size_t evals = 0;
  StopReason reason = StopReason::Budget;
};

/// Unconstrained COBYLA. The simplex is kept as the best vertex plus n
/// displacement columns `sim`, together with `simi` = sim^{-1}. Each step
/// minimizes the linear interpolant within radius rho, or replaces a vertex
/// to restore simplex geometry; rho halves when neither helps.
inline MinimizerResult cobyla(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                              const MinimizerOptions& opt) {
  opt.validate();
  constexpr double alpha = 0.25, beta = 2.1, gamma = 0.5, delta = 1.1;
  const Eigen::Index n = x0.size();
  MinimizerResult res;
  res.x = x0;
  std::size_t evals = 0;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++evals;
    return f(x);
  };
  if (n == 0) {
    res.f = eval(x0);
    res.evals = evals;
    res.reason = StopReason::RhoEnd;
    return res;
  }

  double rho = opt.rho_begin;
  Eigen::VectorXd base = x0;
  Eigen::MatrixXd sim = Eigen::MatrixXd::Identity(n, n) * rho;
  Eigen::MatrixXd simi = Eigen::MatrixXd::Identity(n, n) / rho;
  Eigen::VectorXd fv(n);  // values at base + sim.col(j)
  double fbase = eval(base);

  // Initial simplex; a better vertex becomes the base immediately.
  for (Eigen::Index j = 0; j < n; ++j) {
    if (evals >= opt.max_evals) {
      res.x = base;
      res.f = fbase;
      res.evals = evals;
      return res;
    }
    Eigen::VectorXd x = base;
    x(j) += rho;
    const double fx = eval(x);
    if (fx < fbase) {
      fv(j) = fbase;
      fbase = fx;
      base(j) = x(j);
      for (Eigen::Index k = 0; k <= j; ++k) {
        sim(j, k) = -rho;
        double t = 0.0;
        for (Eigen::Index i = k; i <= j; ++i) t -= simi(i, k);
        simi(j, k) = t;
      }
    } else {
      fv(j) = fx;
    }
  }

  // Replaces vertex `jdrop` with displacement dx (function value fx).
  auto replace_vertex = [&](Eigen::Index jdrop, const Eigen::VectorXd& dx, double fx) {
    sim.col(jdrop) = dx;
    const double t = simi.row(jdrop).dot(dx);
    simi.row(jdrop) /= t;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == jdrop) continue;
      const double s = simi.row(j).dot(dx);
      simi.row(j) -= s * simi.row(jdrop);
    }
    fv(jdrop) = fx;
  };

  bool geometry_allowed = false;  // Powell's ibrnch == 0
  std::size_t since_check = 0;
  Eigen::VectorXd vsig(n), veta(n);
  while (true) {
    // Make the best vertex the base.
    Eigen::Index nbest = -1;
    double fmin = fbase;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (fv(j) < fmin) {
        fmin = fv(j);
        nbest = j;
      }
    }
    if (nbest >= 0) {
      fv(nbest) = fbase;
      fbase = fmin;
      const Eigen::VectorXd d = sim.col(nbest);
      base += d;
      for (Eigen::Index k = 0; k < n; ++k) sim.col(k) -= d;
      sim.col(nbest) = -d;
      simi.row(nbest) = -simi.colwise().sum();
    }
    if (++since_check >= 32) {
      since_check = 0;
      const double err = (simi * sim - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
      if (err > 1e-8) simi = sim.partialPivLu().inverse();
    }

    // Linear model gradient and simplex acceptability.
    const Eigen::VectorXd g = simi.transpose() * (fv.array() - fbase).matrix();
    const double parsig = alpha * rho, pareta = beta * rho;
    bool acceptable = true;
    for (Eigen::Index j = 0; j < n; ++j) {
      vsig(j) = 1.0 / simi.row(j).norm();
      veta(j) = sim.col(j).norm();
      if (vsig(j) < parsig || veta(j) > pareta) acceptable = false;
    }

    if (geometry_allowed && !acceptable) {
      Eigen::Index jdrop = -1;
      double t = pareta;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (veta(j) > t) {
          jdrop = j;
          t = veta(j);
        }
      }
      if (jdrop < 0) {
        for (Eigen::Index j = 0; j < n; ++j) {
          if (vsig(j) < t) {
            jdrop = j;
            t = vsig(j);
          }
        }
      }
      Eigen::VectorXd dx = (gamma * rho * vsig(jdrop)) * simi.row(jdrop).transpose();
      if (g.dot(dx) > 0.0) dx = -dx;
      if (evals >= opt.max_evals) break;
      const double fx = eval(base + dx);
      replace_vertex(jdrop, dx, fx);
      geometry_allowed = false;
      continue;
    }

    // Trust-region step on the linear model.
    const double gnorm = g.norm();
    bool shrink = false;
    if (!(gnorm > 0.0)) {
      shrink = true;
    } else {
      const Eigen::VectorXd dx = (-rho / gnorm) * g;
      const double prerem = -g.dot(dx);
      if (evals >= opt.max_evals) break;
      const double fx = eval(base + dx);
      const double trured = fbase - fx;

      double ratio = trured <= 0.0 ? 1.0 : 0.0;
      Eigen::Index jdrop = -1;
      Eigen::VectorXd sigbar(n);
      for (Eigen::Index j = 0; j < n; ++j) {
        const double t = std::abs(simi.row(j).dot(dx));
        if (t > ratio) {
          jdrop = j;
          ratio = t;
        }
        sigbar(j) = t * vsig(j);
      }
      double edgmax = delta * rho;
      Eigen::Index l = -1;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (sigbar(j) >= parsig || sigbar(j) >= vsig(j)) {
          const double t = trured > 0.0 ? (dx - sim.col(j)).norm() : veta(j);
          if (t > edgmax) {
            l = j;
            edgmax = t;
          }
        }
      }
      if (l >= 0) jdrop = l;
      if (jdrop >= 0) {
        replace_vertex(jdrop, dx, fx);
        if (trured > 0.0 && trured >= 0.1 * prerem) continue;
      }
      shrink = true;
    }
    if (shrink) {
      if (!acceptable) {
        geometry_allowed = true;
        continue;
      }
      if (rho > opt.rho_end) {
        rho *= 0.5;
        if (rho <= 1.5 * opt.rho_end) rho = opt.rho_end;
        continue;
      }
      res.reason = StopReason::RhoEnd;
      break;
    }
  }
  // Report the best vertex.
  res.x = base;
  res.f = fbase;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (fv(j) < res.f) {
      res.f = fv(j);
      res.x = base + sim.col(j);
    }
  }
  res.evals = evals;
  return res;
}

/// Nelder-Mead with the standard coefficients (1, 2, 1/2, 1/2). The initial
/// simplex steps rho_begin along each axis; stops when both the simplex
/// diameter and the spread of values fall below rho_end.
inline MinimizerResult nelder_mead(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                                   const MinimizerOptions& opt) {
  opt.validate();
  const Eigen::Index n = x0.size();
  MinimizerResult res;
  std::size_t evals = 0;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++evals;
    return f(x);
  };
  std::vector<Eigen::VectorXd> pts{x0};
  std::vector<double> vals{eval(x0)};
  for (Eigen::Index j = 0; j < n && evals < opt.max_evals; ++j) {
    Eigen::VectorXd x = x0;
    x(j) += opt.rho_begin;
    pts.push_back(x);
    vals.push_back(eval(x));
  }
  std::vector<std::size_t> order(pts.size());
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
  };
  res.reason = StopReason::Budget;
  while (static_cast<Eigen::Index>(pts.size()) == n + 1 && evals < opt.max_evals) {
    sort_simplex();
    const std::size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];
    double diam = 0.0;
    for (const auto& p : pts) diam = std::max(diam, (p - pts[best]).cwiseAbs().maxCoeff());
    if (n == 0 || (diam <= opt.rho_end && vals[worst] - vals[best] <= opt.rho_end)) {
      res.reason = StopReason::RhoEnd;
      break;
    }
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i : order) {
      if (i != worst) centroid += pts[i];
    }
    centroid /= static_cast<double>(n);
    const Eigen::VectorXd xr = centroid + (centroid - pts[worst]);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      if (evals >= opt.max_evals) {
        pts[worst] = xr;
        vals[worst] = fr;
        break;
      }
      const Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    if (evals >= opt.max_evals) break;
    const bool outside = fr < vals[worst];
    const Eigen::VectorXd xc =
        outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid))
                : Eigen::VectorXd(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = eval(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i : order) {
      if (i == best || evals >= opt.max_evals) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = eval(pts[i]);
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  res.x = pts[static_cast<std::size_t>(it - vals.begin())];
  res.f = *it;
  res.evals = evals;
  return res;
}

}  // namespace qoca
