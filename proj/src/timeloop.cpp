// SPDX-License-Identifier: Apache-2.0
#include "kfem/timeloop.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace kfem {

std::vector<double> TimePartition::steps() const {
  std::vector<double> k(n_slabs());
  for (int n = 0; n < n_slabs(); ++n) k[n] = step(n);
  return k;
}

TimePartition TimePartition::single_slab(double t_f) {
  if (t_f <= 0.0) throw std::invalid_argument("TimePartition: t_f must be positive");
  return {{0.0, t_f}};
}

TimePartition TimePartition::uniform_from_target(double t_f, double k_target) {
  if (t_f <= 0.0 || k_target <= 0.0) throw std::invalid_argument("TimePartition: bad parameters");
  const int n = std::max(1, static_cast<int>(std::ceil(t_f / k_target - 1e-9)));
  TimePartition part;
  part.breakpoints.resize(n + 1);
  for (int i = 0; i <= n; ++i) part.breakpoints[i] = t_f * static_cast<double>(i) / n;
  return part;
}

KRule k_rule_from_string(const std::string& s) {
  if (s == "single") return KRule::SingleSlab;
  if (s == "fixed") return KRule::Fixed;
  if (s == "h") return KRule::H;
  if (s == "h2") return KRule::H2;
  throw std::invalid_argument("unknown k-rule: " + s);
}

TimePartition make_partition(KRule rule, double t_f, double h_max, double fixed_k) {
  switch (rule) {
    case KRule::SingleSlab:
      return TimePartition::single_slab(t_f);
    case KRule::Fixed:
      return TimePartition::uniform_from_target(t_f, fixed_k);
    case KRule::H:
      return TimePartition::uniform_from_target(t_f, h_max);
    case KRule::H2:
      return TimePartition::uniform_from_target(t_f, h_max * h_max);
  }
  throw std::logic_error("make_partition: bad rule");
}

void SpaceTimeSolution::coeffs_at(const DGTimeBasis& tb, int slab, double s,
                                  std::vector<double>& c, std::vector<double>* ct) const {
  const double k = partition.step(slab);
  c.assign(n_dofs, 0.0);
  if (ct) ct->assign(n_dofs, 0.0);
  const std::vector<double>& u = blocks[slab];
  for (int a = 0; a <= q; ++a) {
    const double va = tb.value(a, s);
    const double da = tb.deriv(a, s) / k;
    const double* ua = u.data() + static_cast<size_t>(a) * n_dofs;
    for (int i = 0; i < n_dofs; ++i) {
      c[i] += va * ua[i];
      if (ct) (*ct)[i] += da * ua[i];
    }
  }
}

std::vector<double> SpaceTimeSolution::endpoint_minus(int n) const {
  if (n == 0) return initial;
  const DGTimeBasis tb(q);
  std::vector<double> c(n_dofs, 0.0);
  const std::vector<double>& u = blocks[n - 1];
  for (int a = 0; a <= q; ++a) {
    const double va = tb.at1(a);
    const double* ua = u.data() + static_cast<size_t>(a) * n_dofs;
    for (int i = 0; i < n_dofs; ++i) c[i] += va * ua[i];
  }
  return c;
}

std::vector<double> SpaceTimeSolution::endpoint_plus(int n) const {
  const DGTimeBasis tb(q);
  std::vector<double> c(n_dofs, 0.0);
  const std::vector<double>& u = blocks[n];
  for (int a = 0; a <= q; ++a) {
    const double va = tb.at0(a);
    const double* ua = u.data() + static_cast<size_t>(a) * n_dofs;
    for (int i = 0; i < n_dofs; ++i) c[i] += va * ua[i];
  }
  return c;
}

namespace {

// Block CSR over (q+1) x (q+1) copies of the shared spatial pattern.
struct BlockSystem {
  CsrMatrix mat;                  // values get overwritten per k_n
  std::vector<double> vals_full;  // values before constraint elimination
  std::vector<int> spat_pos;      // nnz index into the spatial pattern per block entry
  std::vector<int> block_a;       // trial block index per block entry
  int n_dofs = 0;
  int nb = 0;
};

BlockSystem build_block_pattern(const CsrMatrix& spat, int nb) {
  BlockSystem bs;
  bs.n_dofs = spat.n_rows;
  bs.nb = nb;
  const int n = spat.n_rows * nb;
  bs.mat.n_rows = n;
  bs.mat.n_cols = n;
  bs.mat.row_ptr.assign(n + 1, 0);
  const size_t nnz_total = static_cast<size_t>(spat.nnz()) * nb * nb;
  bs.mat.col_idx.reserve(nnz_total);
  bs.spat_pos.reserve(nnz_total);
  bs.block_a.reserve(nnz_total);
  for (int b = 0; b < nb; ++b) {
    for (int i = 0; i < spat.n_rows; ++i) {
      const int row = b * spat.n_rows + i;
      for (int a = 0; a < nb; ++a) {
        for (int k = spat.row_ptr[i]; k < spat.row_ptr[i + 1]; ++k) {
          bs.mat.col_idx.push_back(a * spat.n_cols + spat.col_idx[k]);
          bs.spat_pos.push_back(k);
          bs.block_a.push_back(a);
        }
      }
      bs.mat.row_ptr[row + 1] = static_cast<int>(bs.mat.col_idx.size());
    }
  }
  bs.mat.vals.assign(bs.mat.col_idx.size(), 0.0);
  bs.vals_full.assign(bs.mat.col_idx.size(), 0.0);
  return bs;
}

void fill_block_values(BlockSystem& bs, const DGTimeBasis& tb, double k_n,
                       const CsrMatrix& m_time, const CsrMatrix& k_spat, const CsrMatrix& k_st,
                       const CsrMatrix& k_ts, const CsrMatrix& k_tt) {
  const int nb = bs.nb;
  // per-(test b, trial a) scalar weights of each spatial matrix
  std::vector<double> c_m(nb * nb), c_k(nb * nb), c_st(nb * nb), c_ts(nb * nb), c_tt(nb * nb);
  for (int b = 0; b < nb; ++b)
    for (int a = 0; a < nb; ++a) {
      c_m[b * nb + a] = tb.d_matrix()(a, b) + tb.at0(a) * tb.at0(b);
      c_k[b * nb + a] = (a == b) ? k_n : 0.0;
      c_st[b * nb + a] = tb.d_matrix()(b, a);
      c_ts[b * nb + a] = tb.d_matrix()(a, b);
      c_tt[b * nb + a] = tb.e_matrix()(a, b) / k_n;
    }
  const int ndof = bs.n_dofs;
#pragma omp parallel for schedule(static)
  for (int row = 0; row < bs.mat.n_rows; ++row) {
    const int b = row / ndof;
    for (int k = bs.mat.row_ptr[row]; k < bs.mat.row_ptr[row + 1]; ++k) {
      const int a = bs.block_a[k];
      const int sp = bs.spat_pos[k];
      const int w = b * nb + a;
      bs.vals_full[k] = c_m[w] * m_time.vals[sp] + c_k[w] * k_spat.vals[sp] +
                        c_st[w] * k_st.vals[sp] + c_ts[w] * k_ts.vals[sp] + c_tt[w] * k_tt.vals[sp];
    }
  }
}

}  // namespace

double slab_ah_quadratic(const SpatialOperators& ops, const DGTimeBasis& tb, double k_n,
                         const std::vector<double>& block, int n_dofs) {
  const int nb = tb.size();
  const CsrMatrix k_spat = ops.combined_spatial();
  double total = 0.0;
  std::vector<double> tmp(n_dofs);
  for (int b = 0; b < nb; ++b) {
    const double* ub = block.data() + static_cast<size_t>(b) * n_dofs;
    for (int a = 0; a < nb; ++a) {
      const double* ua = block.data() + static_cast<size_t>(a) * n_dofs;
      const double ck = (a == b) ? k_n : 0.0;
      const double cst = tb.d_matrix()(b, a);
      const double cts = tb.d_matrix()(a, b);
      const double ctt = tb.e_matrix()(a, b) / k_n;
      // tmp = (ck K_spat + cst K_st + cts K_ts + ctt K_tt) ua
      std::fill(tmp.begin(), tmp.end(), 0.0);
      for (int i = 0; i < n_dofs; ++i) {
        double s = 0.0;
        for (int kk = k_spat.row_ptr[i]; kk < k_spat.row_ptr[i + 1]; ++kk) {
          const int j = k_spat.col_idx[kk];
          s += (ck * k_spat.vals[kk] + cst * ops.K_st.vals[kk] + cts * ops.K_ts.vals[kk] +
                ctt * ops.K_tt.vals[kk]) *
               ua[j];
        }
        tmp[i] = s;
      }
      for (int i = 0; i < n_dofs; ++i) total += ub[i] * tmp[i];
    }
  }
  return total;
}

MarchResult march(const FESpace& space, const StabParams& stab, const SpatialOperators& ops,
                  const CaseDefinition& cs, const TimePartition& partition, int q,
                  std::vector<double> initial, const SolverOptions& solver) {
  const int ndof = space.n_dofs();
  if (static_cast<int>(initial.size()) != ndof) throw std::invalid_argument("march: initial size mismatch");
  const DGTimeBasis tb(q);
  const int nb = q + 1;
  const CsrMatrix& m_time = ops.time_inner();
  const CsrMatrix k_spat = ops.combined_spatial();

  BlockSystem bs = build_block_pattern(ops.M, nb);
  std::vector<char> row_mask(static_cast<size_t>(ndof) * nb, 0);
  for (int d : space.constrained_dofs())
    for (int a = 0; a < nb; ++a) row_mask[static_cast<size_t>(a) * ndof + d] = 1;

  MarchResult result;
  result.solution.partition = partition;
  result.solution.q = q;
  result.solution.n_dofs = ndof;
  result.solution.initial = initial;
  result.solution.blocks.assign(partition.n_slabs(), std::vector<double>());

  const GaussRule f_rule = gauss_legendre_01(std::max(q + 2, 6));
  const bool has_forcing = !cs.zero_forcing;
  const SourceFn source = cs.source();

  std::unique_ptr<LuFactor> lu;
  std::unique_ptr<Preconditioner> prec;
  const bool dense_path = solver.prefer_dense && bs.mat.n_rows <= solver.dense_cap;

  double current_k = -1.0;
  std::vector<double> u_prev = initial;
  std::vector<double> rhs(static_cast<size_t>(ndof) * nb);
  std::vector<double> g_ext(static_cast<size_t>(ndof) * nb);
  std::vector<double> x(static_cast<size_t>(ndof) * nb, 0.0);

  for (int n = 0; n < partition.n_slabs(); ++n) {
    const double k_n = partition.step(n);
    const double t0 = partition.t_begin(n);
    if (std::abs(k_n - current_k) > 1e-14 * std::max(1.0, k_n)) {
      current_k = k_n;
      fill_block_values(bs, tb, k_n, m_time, k_spat, ops.K_st, ops.K_ts, ops.K_tt);
      bs.mat.vals = bs.vals_full;
      apply_identity_constraints(bs.mat, row_mask);
      if (dense_path) {
        lu = std::make_unique<LuFactor>(csr_to_dense(bs.mat));
      } else {
        prec = make_preconditioner(bs.mat, solver.gmres.precond);
      }
    }

    // rhs_b = at0(b) * M_time U_prev + int_In f-terms
    const std::vector<double> mu = m_time.multiply(u_prev);
    for (int b = 0; b < nb; ++b)
      for (int i = 0; i < ndof; ++i) rhs[static_cast<size_t>(b) * ndof + i] = tb.at0(b) * mu[i];
    if (has_forcing) {
      for (size_t g = 0; g < f_rule.points.size(); ++g) {
        const double s = f_rule.points[g];
        const double w = f_rule.weights[g];
        const RhsVectors fv = assemble_rhs(space, stab, ops.method, source, t0 + k_n * s);
        for (int b = 0; b < nb; ++b) {
          const double wa = w * k_n * tb.value(b, s);
          const double wt = w * tb.deriv(b, s);
          double* r = rhs.data() + static_cast<size_t>(b) * ndof;
          for (int i = 0; i < ndof; ++i) r[i] += wa * fv.f_A[i] + wt * fv.f_t[i];
        }
      }
    }

    // inflow data: P_q time projection of g at each constrained dof
    std::fill(g_ext.begin(), g_ext.end(), 0.0);
    bool any_bc = false;
    for (int d : space.constrained_dofs()) {
      const Vec2 xy = space.dof_coord(d);
      const std::vector<double> gc = time_project(
          [&](double t) { return cs.g(t, xy.x); }, t0, t0 + k_n, q,
          static_cast<int>(f_rule.points.size()));
      for (int a = 0; a < nb; ++a) {
        g_ext[static_cast<size_t>(a) * ndof + d] = gc[a];
        if (gc[a] != 0.0) any_bc = true;
      }
    }
    if (any_bc) {
      // lift: move constrained columns to the right-hand side, using the
      // unconstrained values on the shared pattern
#pragma omp parallel for schedule(static)
      for (int row = 0; row < bs.mat.n_rows; ++row) {
        double s = 0.0;
        for (int kk = bs.mat.row_ptr[row]; kk < bs.mat.row_ptr[row + 1]; ++kk)
          s += bs.vals_full[kk] * g_ext[bs.mat.col_idx[kk]];
        rhs[row] -= s;
      }
    }
    for (size_t i = 0; i < rhs.size(); ++i)
      if (row_mask[i]) rhs[i] = g_ext[i];

    if (dense_path) {
      x = lu->solve(rhs);
    } else {
      const SolveReport rep = gmres(bs.mat, rhs, x, solver.gmres, prec.get());
      result.total_iterations += rep.iterations;
      result.reports.push_back(rep);
      if (!rep.converged) {
        std::ostringstream msg;
        msg << "march: slab " << n << " solver failed (iterations " << rep.iterations
            << ", residual " << rep.residual << ")";
        throw std::runtime_error(msg.str());
      }
    }

    result.solution.blocks[n] = x;
    // U(t_n^-) for the next slab
    std::fill(u_prev.begin(), u_prev.end(), 0.0);
    for (int a = 0; a < nb; ++a) {
      const double va = tb.at1(a);
      const double* ua = x.data() + static_cast<size_t>(a) * ndof;
      for (int i = 0; i < ndof; ++i) u_prev[i] += va * ua[i];
    }
  }
  return result;
}

SpaceTimeSolution st_project(const FESpace& space, const AProjector& proj,
                             const CaseDefinition& cs, const TimePartition& partition, int q,
                             int time_quad_points) {
  if (!cs.has_exact) throw std::invalid_argument("st_project: case has no exact solution");
  const int ndof = space.n_dofs();
  const DGTimeBasis tb(q);
  const GaussRule rule = gauss_legendre_01(std::max(time_quad_points, q + 2));

  SpaceTimeSolution sol;
  sol.partition = partition;
  sol.q = q;
  sol.n_dofs = ndof;

  auto project_at = [&](double t) {
    GradFn u_t = [&cs, t](double x, double y) { return cs.u(t, x, y).v; };
    return proj.project(u_t);
  };
  sol.initial = project_at(partition.t_begin(0));

  sol.blocks.assign(partition.n_slabs(), std::vector<double>(static_cast<size_t>(ndof) * (q + 1), 0.0));
  for (int n = 0; n < partition.n_slabs(); ++n) {
    const double t0 = partition.t_begin(n), k = partition.step(n);
    std::vector<std::vector<double>> c(q + 1, std::vector<double>(ndof, 0.0));
    // moments against P_0..P_{q-1}
    if (q > 0) {
      for (size_t g = 0; g < rule.points.size(); ++g) {
        const double s = rule.points[g], w = rule.weights[g];
        const std::vector<double> z = project_at(t0 + k * s);
        for (int a = 0; a < q; ++a) {
          const double wa = w * tb.value(a, s);
          for (int i = 0; i < ndof; ++i) c[a][i] += wa * z[i];
        }
      }
    }
    // endpoint interpolation at t_n^-
    const std::vector<double> z_end = project_at(t0 + k);
    for (int i = 0; i < ndof; ++i) {
      double tail = 0.0;
      for (int a = 0; a < q; ++a) tail += c[a][i] * tb.at1(a);
      c[q][i] = (z_end[i] - tail) / tb.at1(q);
    }
    for (int a = 0; a <= q; ++a)
      std::copy(c[a].begin(), c[a].end(), sol.blocks[n].begin() + static_cast<size_t>(a) * ndof);
  }
  return sol;
}

void write_snapshot_csv(const std::vector<double>& coeffs, std::ostream& out) {
  out << "dof,value\n";
  char line[64];
  for (size_t i = 0; i < coeffs.size(); ++i) {
    std::snprintf(line, sizeof(line), "%zu,%.12g\n", i, coeffs[i]);
    out << line;
  }
}

void write_snapshot_vtk(const FESpace& space, const std::vector<double>& coeffs, std::ostream& out) {
  const Mesh& mesh = space.mesh();
  out << "# vtk DataFile Version 3.0\nfield snapshot\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.n_vertices() << " double\n";
  out.precision(12);
  for (const Vec2& v : mesh.vertices) out << v.x << ' ' << v.y << " 0\n";
  out << "CELLS " << mesh.n_elements() << ' ' << 4 * mesh.n_elements() << '\n';
  for (const auto& t : mesh.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << mesh.n_elements() << '\n';
  for (int e = 0; e < mesh.n_elements(); ++e) out << "5\n";
  out << "POINT_DATA " << mesh.n_vertices() << "\nSCALARS u double 1\nLOOKUP_TABLE default\n";
  for (int v = 0; v < mesh.n_vertices(); ++v) out << coeffs[v] << '\n';
}

}  // namespace kfem
