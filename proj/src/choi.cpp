#include "conemaps/choi.hpp"

#include <map>
#include <mutex>
#include <string>

namespace conemaps {

MapRep::MapRep(Dims d, CMatrix choi) : dims_(d), choi_(std::move(choi)) {
  require_composite(choi_, dims_, "MapRep");
  require_finite(choi_, "MapRep");
}

CMatrix MapRep::block(int i, int j) const {
  const int m = dims_.m;
  return choi_.block(i * m, j * m, m, m);
}

void MapRep::require_hermitian_choi(const char* what) const {
  if (!hermitian_choi()) {
    throw NotHermitianError(std::string(what) + ": Choi matrix is not Hermitian");
  }
}

MapRep operator+(const MapRep& a, const MapRep& b) {
  if (!(a.dims() == b.dims())) throw DimensionError("MapRep +: dims differ");
  return MapRep(a.dims(), a.choi() + b.choi());
}

Complex DualFunctional::operator()(const CMatrix& x) const {
  require_composite(x, dims, "DualFunctional");
  return trace_pairing(density, x);
}

MapRep map_from_action(int n, int m, const MatrixAction& action) {
  const Dims d(n, m);
  CMatrix choi(d.composite(), d.composite());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const CMatrix img = action(unit(n, i, j));
      if (img.rows() != m || img.cols() != m) {
        throw DimensionError("map_from_action: action returned " + std::to_string(img.rows()) +
                             "x" + std::to_string(img.cols()) + ", expected " +
                             std::to_string(m) + "x" + std::to_string(m));
      }
      choi.block(i * m, j * m, m, m) = img;
    }
  }
  return MapRep(d, std::move(choi));
}

CMatrix apply(const MapRep& phi, const CMatrix& a) {
  const int n = phi.in_dim(), m = phi.out_dim();
  if (a.rows() != n || a.cols() != n) {
    throw DimensionError("apply: input must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  const CMatrix& c = phi.choi();
  CMatrix out = CMatrix::Zero(m, m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (a(i, j) != Complex(0.0)) out += a(i, j) * c.block(i * m, j * m, m, m);
    }
  }
  return out;
}

CMatrix apply_local(const MapRep& alpha, const CMatrix& x, int n) {
  const int m = alpha.in_dim(), k = alpha.out_dim();
  require_composite(x, Dims(n, m), "apply_local");
  CMatrix out(n * k, n * k);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out.block(i * k, j * k, k, k) = conemaps::apply(alpha, CMatrix(x.block(i * m, j * m, m, m)));
    }
  }
  return out;
}

MapRep compose_left(const MapRep& alpha, const MapRep& phi) {
  if (alpha.in_dim() != phi.out_dim()) {
    throw DimensionError("compose_left: output of phi is M_" + std::to_string(phi.out_dim()) +
                         " but alpha acts on M_" + std::to_string(alpha.in_dim()));
  }
  return MapRep(Dims(phi.in_dim(), alpha.out_dim()),
                apply_local(alpha, phi.choi(), phi.in_dim()));
}

MapRep transpose_conj(const MapRep& phi) {
  return MapRep(phi.dims(), both_transpose(phi.choi(), phi.dims()));
}

MapRep adjoint(const MapRep& phi) {
  const int n = phi.in_dim(), m = phi.out_dim();
  // phi*(b)_ji = Tr(phi(e_ij) b)
  return map_from_action(m, n, [&](const CMatrix& b) {
    CMatrix out(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) out(j, i) = trace_pairing(phi.block(i, j), b);
    }
    return out;
  });
}

DualFunctional dual_functional(const MapRep& phi) {
  return DualFunctional{transpose_conj(phi).choi(), phi.dims()};
}

double pairing(const MapRep& phi, const MapRep& psi) {
  if (!(phi.dims() == psi.dims())) throw DimensionError("pairing: dims differ");
  phi.require_hermitian_choi("pairing");
  psi.require_hermitian_choi("pairing");
  return trace_pairing(phi.choi(), psi.choi()).real();
}

double omega_eval(const CMatrix& x, int n) {
  require_composite(x, Dims(n, n), "omega_eval");
  require_hermitian(x, "omega_eval");
  // Tr(p x) = sum_ij x_(jj),(ii)
  Complex s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s += x(j * n + j, i * n + i);
  }
  return s.real() / n;
}

Complex trpi_eval(const CMatrix& x, Dims d) {
  if (!d.square()) throw DimensionError("trpi_eval: requires n == m");
  require_composite(x, d, "trpi_eval");
  const int n = d.n;
  Complex s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s += x(i * n + i, j * n + j);
  }
  return s;
}

const CMatrix& max_entangled_projector(int n) {
  static std::mutex mu;
  static std::map<int, CMatrix> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    if (n < 1) throw DimensionError("max_entangled_projector: n must be positive");
    CMatrix p = CMatrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) p(i * n + i, j * n + j) = 1.0;
    }
    it = cache.emplace(n, std::move(p)).first;
  }
  return it->second;
}

MapRep identity_map(int n) { return MapRep(Dims(n, n), max_entangled_projector(n)); }

MapRep transpose_map(int n) {
  return map_from_action(n, n, [](const CMatrix& a) { return CMatrix(a.transpose()); });
}

MapRep depolarizing_map(int n, int m) {
  return map_from_action(n, m, [m](const CMatrix& a) {
    return CMatrix(a.trace() * CMatrix::Identity(m, m) / double(m));
  });
}

MapRep kraus_map(const CMatrix& k) {
  return map_from_action(int(k.cols()), int(k.rows()),
                         [&k](const CMatrix& a) { return CMatrix(k * a * k.adjoint()); });
}

MapRep transpose_after(const MapRep& phi) {
  return MapRep(phi.dims(), partial_transpose(phi.choi(), phi.dims()));
}

}  // namespace conemaps
