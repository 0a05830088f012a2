#include "haariso/haar_maps.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "haariso/error.hpp"

namespace haariso {

namespace {

Permutation realize(const FiniteGroup& g, const std::function<std::pair<int, int>(int, int)>& f) {
  std::vector<int> img(2 * g.order);
  for (int i = 0; i < 2; ++i)
    for (int x = 0; x < g.order; ++x) {
      auto [i2, x2] = f(i, x);
      img[haar_encode(g.order, i, x)] = haar_encode(g.order, i2, x2);
    }
  return Permutation(std::move(img));
}

} // namespace

HaarMap ghat_map(const FiniteGroup& g, int elem) {
  HaarMap m{HaarMap::Kind::GhatL, elem, {}, {}};
  m.realized = realize(g, [&](int i, int x) { return std::pair{i, g.mul(elem, x)}; });
  return m;
}

HaarMap bar_map(const FiniteGroup& g, int elem) {
  HaarMap m{HaarMap::Kind::Bar, elem, {}, {}};
  int ginv = g.inv(elem);
  m.realized = realize(g, [&](int i, int x) {
    return i == 0 ? std::pair{0, x} : std::pair{1, g.mul(x, ginv)};
  });
  return m;
}

HaarMap tilde_map(const FiniteGroup& g, int elem) {
  HaarMap m{HaarMap::Kind::Tilde, elem, {}, {}};
  int ginv = g.inv(elem);
  m.realized = realize(g, [&](int i, int x) {
    return i == 0 ? std::pair{0, g.mul(x, ginv)} : std::pair{1, x};
  });
  return m;
}

HaarMap tau_map(const FiniteGroup& g) {
  HaarMap m{HaarMap::Kind::Tau, -1, {}, {}};
  m.realized = realize(g, [&](int i, int x) { return std::pair{1 - i, x}; });
  return m;
}

HaarMap sigma_hat_map(const FiniteGroup& g, const std::vector<int>& sigma) {
  if (static_cast<int>(sigma.size()) != g.order)
    throw Error::invalid_map("sigma_hat: wrong domain size");
  std::vector<char> seen(g.order, 0);
  for (int v : sigma) {
    if (v < 0 || v >= g.order || seen[v]) throw Error::invalid_map("sigma_hat: not a bijection");
    seen[v] = 1;
  }
  HaarMap m{HaarMap::Kind::SigmaHat, -1, sigma, {}};
  m.realized = realize(g, [&](int i, int x) { return std::pair{i, sigma[x]}; });
  return m;
}

HaarMap iota_map(const FiniteGroup& g) {
  if (!g.is_abelian()) throw Error::unsupported("iota requires an abelian group");
  std::vector<int> inv(g.order);
  for (int x = 0; x < g.order; ++x) inv[x] = g.inv(x);
  auto m = sigma_hat_map(g, inv);
  m.kind = HaarMap::Kind::Iota;
  return m;
}

std::vector<IsoElement> iso_set(const FiniteGroup& g, int bound) {
  auto auts = automorphism_group(g, bound);
  auto tau = tau_map(g).realized;
  std::vector<IsoElement> out;
  out.reserve(2 * auts.size() * g.order);
  for (int i = 0; i < 2; ++i)
    for (const auto& alpha : auts) {
      auto head = (i == 0) ? sigma_hat_map(g, alpha.images).realized
                           : tau.then(sigma_hat_map(g, alpha.images).realized);
      for (int e = 0; e < g.order; ++e) {
        IsoElement m;
        m.i = i;
        m.alpha = alpha;
        m.g = e;
        m.realized = head.then(bar_map(g, e).realized);
        out.push_back(std::move(m));
      }
    }
  return out;
}

PermGroup ghat_group(const FiniteGroup& g) {
  std::vector<Permutation> elems;
  for (int e = 0; e < g.order; ++e) elems.push_back(ghat_map(g, e).realized);
  PermGroup out;
  out.degree = 2 * g.order;
  auto gens = minimal_generating_sequence(g);
  for (int e : gens) out.generators.push_back(ghat_map(g, e).realized);
  if (out.generators.empty()) out.generators.push_back(Permutation::identity(out.degree));
  out.elements = sorted_unique(std::move(elems));
  out.order = static_cast<long long>(out.elements->size());
  return out;
}

PermGroup normalizer_of_ghat(const FiniteGroup& g, int bound) {
  auto auts = automorphism_group(g, bound);
  std::vector<Permutation> gens;
  gens.push_back(tau_map(g).realized);
  for (const auto& a : auts) gens.push_back(sigma_hat_map(g, a.images).realized);
  for (int e : minimal_generating_sequence(g)) {
    gens.push_back(tilde_map(g, e).realized);
    gens.push_back(bar_map(g, e).realized);
  }
  long long expect = 2LL * static_cast<long long>(auts.size()) * g.order * g.order;
  auto n = closure(gens, expect + 16);
  if (!n.elements || *n.order != expect)
    throw Error::internal("normalizer closure does not match 2 |Aut(G)| |G|^2");
  return n;
}

bool verify_normalizer(const FiniteGroup& g) {
  const int deg = 2 * g.order;
  if (deg > 10) throw Error::budget_exhausted("verify_normalizer: symmetric group too large");

  auto ghat = ghat_group(g);
  std::set<std::vector<int>> ghat_set;
  for (const auto& p : *ghat.elements) ghat_set.insert(p.images);
  std::vector<Permutation> gens;
  for (int e : minimal_generating_sequence(g)) gens.push_back(ghat_map(g, e).realized);
  if (gens.empty()) gens.push_back(Permutation::identity(deg));

  std::set<std::vector<int>> brute;
  std::vector<int> img(deg);
  std::iota(img.begin(), img.end(), 0);
  std::vector<int> scratch(deg);
  do {
    bool ok = true;
    for (const auto& gen : gens) {
      // conjugate of the generator by img, evaluated without allocations
      for (int x = 0; x < deg; ++x) scratch[img[x]] = img[gen(x)];
      if (!ghat_set.count(scratch)) { ok = false; break; }
    }
    if (ok) brute.insert(img);
  } while (std::next_permutation(img.begin(), img.end()));

  auto structured = normalizer_of_ghat(g);
  std::set<std::vector<int>> str_set;
  for (const auto& p : *structured.elements) str_set.insert(p.images);
  return brute == str_set;
}

std::optional<ConnSet> connection_set_of(const FiniteGroup& g, const Digraph& gr) {
  if (gr.n != 2 * g.order) return std::nullopt;
  ConnSet t = 0;
  std::uint64_t nb = gr.outm[haar_encode(g.order, 0, g.identity)];
  while (nb) {
    int v = std::countr_zero(nb);
    nb &= nb - 1;
    auto [i, y] = haar_decode(g.order, v);
    if (i != 1) return std::nullopt;
    t |= (1ULL << y);
  }
  if (haar(g, t) == gr) return t;
  return std::nullopt;
}

ConnSet transport_connection_set(const FiniteGroup& g, const Permutation& m, ConnSet s) {
  auto image = apply_permutation(haar(g, s), m);
  auto t = connection_set_of(g, image);
  if (!t) throw Error::invalid_map("transport: image is not a Haar graph of G");
  return *t;
}

} // namespace haariso
