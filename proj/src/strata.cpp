#include "linvol/strata.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "linvol/reduce.hpp"
#include "linvol/suspend.hpp"

namespace linvol {

namespace {

struct Vec {
  Rat x, y;
};

Rat cross(const Vec& a, const Vec& b) { return a.x * b.y - a.y * b.x; }
Rat dot(const Vec& a, const Vec& b) { return a.x * b.x + a.y * b.y; }

// direction reduced to the upper half plane (projective representative)
Vec proj(Vec v) {
  if (v.y < 0 || (v.y == 0 && v.x < 0)) {
    v.x = -v.x;
    v.y = -v.y;
  }
  return v;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

bool is_abelian(const GenPerm& gp) { return gp.is_true_permutation(); }

StratumSignature signature(const GenPerm& gp) {
  if (find_reduction(gp).has_value())
    throw ReducibleError("the stratum is defined for irreducible words only");
  auto zeta0 = find_suspension(gp);
  if (!zeta0) throw InternalError("irreducible word without a suspension");
  SuspensionData zeta = make_suitable(gp, *zeta0);
  if (!polygon(gp, zeta).suitable) throw InternalError("expected a suitable polygon");

  const int l = gp.top_len(), m = gp.bottom_len(), n = gp.size(), d = gp.d();
  // vertex ids: top vertices 0..l; interior bottom vertices l+1..l+m-1
  // (bottom endpoint vertices coincide with top ones)
  auto tvid = [&](int k) { return k; };
  auto bvid = [&](int k) { return k == 0 ? 0 : (k == m ? l : l + k); };

  // side p occupies positions: top edge p for p < l, bottom edge p - l else.
  // In the counterclockwise boundary the bottom runs forward, the top
  // backward, so tails/heads are:
  auto tail_of = [&](int p) { return p < l ? tvid(p + 1) : bvid(p - l); };
  auto head_of = [&](int p) { return p < l ? tvid(p) : bvid(p - l + 1); };

  UnionFind uf(n);
  for (int p = 0; p < n; ++p) {
    int q = gp.twin(p);
    if (q < p) continue;
    uf.unite(tail_of(p), head_of(q));
    uf.unite(head_of(p), tail_of(q));
  }

  // corner at every polygon vertex: a = outgoing boundary direction,
  // b = reversed incoming direction; the interior angle is ccw(a -> b)
  auto side_vec = [&](int p) {
    LetterId id = gp.word_at(p);
    return Vec{zeta.re[id], zeta.im[id]};
  };
  auto neg = [](Vec v) {
    return Vec{-v.x, -v.y};
  };
  struct Corner {
    int vertex;
    Vec a, b;
  };
  std::vector<Corner> corners;
  corners.reserve(n);
  corners.push_back({tvid(0), side_vec(l), side_vec(0)});        // origin: out bottom0, in top0
  corners.push_back({tvid(l), neg(side_vec(l - 1)), neg(side_vec(n - 1))});  // far endpoint
  for (int k = 1; k < l; ++k)                                    // interior top vertices
    corners.push_back({tvid(k), neg(side_vec(k - 1)), side_vec(k)});
  for (int k = 1; k < m; ++k)                                    // interior bottom vertices
    corners.push_back({bvid(k), side_vec(l + k), neg(side_vec(l + k - 1))});

  std::vector<int> pi_units(n, 0);
  std::vector<double> shadow(n, 0.0);
  for (const Corner& c : corners) {
    int root = uf.find(c.vertex);
    Rat s = cross(c.a, c.b);
    Rat co = dot(c.a, c.b);
    int h;
    if (s > 0) {
      h = 0;
    } else if (s < 0) {
      h = 1;
    } else if (co < 0) {
      h = 1;  // straight corner, exactly pi
    } else {
      throw AngleResidueError("zero corner angle in a simple polygon");
    }
    Vec pa = proj(c.a), pb = proj(c.b);
    int w = cross(pb, pa) > 0 ? 1 : 0;  // residual rotation wraps past pi
    pi_units[root] += h + w;
    double ang = std::atan2(to_double(cross(c.a, c.b)), to_double(co));
    if (ang <= 0) ang += 2 * M_PI;
    shadow[root] += ang;
  }

  StratumSignature sig;
  sig.kind = is_abelian(gp) ? StratumSignature::Kind::Abelian : StratumSignature::Kind::Quadratic;
  std::vector<int> units;
  for (int v = 0; v < n; ++v) {
    if (uf.find(v) != v) continue;
    int u = pi_units[v];
    if (u < 1) throw AngleResidueError("vertex cycle with vanishing total angle");
    if (std::abs(shadow[v] - u * M_PI) > 1e-6 * M_PI)
      throw AngleResidueError("floating-point shadow disagrees with the exact angle count");
    units.push_back(u);
  }
  int total_units = std::accumulate(units.begin(), units.end(), 0);
  if (total_units != n - 2)
    throw AngleResidueError("interior angles of a simple polygon must sum to (2d-2) pi");

  sig.num_singularities = static_cast<int>(units.size());
  if (sig.kind == StratumSignature::Kind::Abelian) {
    for (int u : units) {
      if (u % 2 != 0) throw AngleResidueError("translation surface with an odd cone angle");
      sig.orders.push_back(u / 2 - 1);
    }
    int sum = std::accumulate(sig.orders.begin(), sig.orders.end(), 0);
    sig.genus = (sum + 2) / 2;
    if (2 * sig.genus - 2 != sum) throw AngleResidueError("odd order sum on a 1-form");
    sig.dimension = 2 * sig.genus + sig.num_singularities - 1;
    if (sig.dimension != d) throw AngleResidueError("dimension identity h = d failed");
  } else {
    // angle 2pi classes are genuine marked points of the suspension surface;
    // they occur for some irreducible words (pillowcase-like ones) and the
    // dimension identities require counting them
    for (int u : units) sig.orders.push_back(u - 2);
    int sum = std::accumulate(sig.orders.begin(), sig.orders.end(), 0);
    if ((sum + 4) % 4 != 0) throw AngleResidueError("order sum must be 4g-4");
    sig.genus = (sum + 4) / 4;
    sig.dimension = 2 * sig.genus + sig.num_singularities - 2;
    if (sig.dimension != d - 1) throw AngleResidueError("dimension identity h = d-1 failed");
  }
  // Euler characteristic cross-check: V - E + F = 2 - 2g
  if (sig.num_singularities - d + 1 != 2 - 2 * sig.genus)
    throw AngleResidueError("genus disagrees with the Euler characteristic");
  std::sort(sig.orders.begin(), sig.orders.end());
  return sig;
}

std::string StratumSignature::str() const {
  std::ostringstream os;
  os << (kind == Kind::Abelian ? "H(" : "Q(");
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (i) os << ",";
    os << orders[i];
  }
  os << ")";
  return os.str();
}

std::string StratumSignature::json() const {
  std::ostringstream os;
  os << "{\"kind\":\"" << (kind == Kind::Abelian ? "abelian" : "quadratic") << "\",\"orders\":[";
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (i) os << ",";
    os << orders[i];
  }
  os << "],\"genus\":" << genus << ",\"n\":" << num_singularities << ",\"dim\":" << dimension
     << "}";
  return os.str();
}

}  // namespace linvol
