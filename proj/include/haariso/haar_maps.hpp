#ifndef HAARISO_HAAR_MAPS_HPP
#define HAARISO_HAAR_MAPS_HPP

#include <optional>
#include <string>
#include <vector>

#include "haariso/graph.hpp"
#include "haariso/group.hpp"
#include "haariso/perm.hpp"

namespace haariso {

// The structured permutations of Z_2 x G.  Points are coded i*|G| + j.
//   ghat(g):      (i,j) -> (i, g*j)
//   bar(g):       (0,x) -> (0,x),       (1,x) -> (1, x*g^-1)
//   tilde(g):     (0,x) -> (0, x*g^-1), (1,x) -> (1,x)
//   tau:          (i,j) -> (i+1, j)
//   sigma_hat(s): (i,j) -> (i, s(j))
//   iota (abelian): sigma_hat of j -> -j
struct HaarMap {
  enum class Kind { GhatL, Bar, Tilde, Tau, SigmaHat, Iota };
  Kind kind;
  int g = -1;                // element index for GhatL/Bar/Tilde
  std::vector<int> sigma;    // for SigmaHat
  Permutation realized;
};

HaarMap ghat_map(const FiniteGroup& g, int elem);
HaarMap bar_map(const FiniteGroup& g, int elem);
HaarMap tilde_map(const FiniteGroup& g, int elem);
HaarMap tau_map(const FiniteGroup& g);
HaarMap sigma_hat_map(const FiniteGroup& g, const std::vector<int>& sigma);
HaarMap iota_map(const FiniteGroup& g); // abelian only

// tau^i . alpha_hat . bar(g), composed left-to-right.
struct IsoElement {
  int i = 0;
  Automorphism alpha;
  int g = 0;
  Permutation realized;
};

// All 2 |Aut(G)| |G| elements of Iso(G), pairwise distinct.
std::vector<IsoElement> iso_set(const FiniteGroup& g, int bound = 64);

// <tau> . Ahat . (Gtilde Gbar) with elements; order 2 |Aut(G)| |G|^2.
PermGroup normalizer_of_ghat(const FiniteGroup& g, int bound = 64);

// Ghat_L as a permutation group with elements.
PermGroup ghat_group(const FiniteGroup& g);

// Brute-force check of the normalizer structure: scans the full symmetric
// group on 2|G| points, so |G| <= 5.
bool verify_normalizer(const FiniteGroup& g);

// The connection set T with m(haar(G,S)) = haar(G,T), by edge transport.
// Throws invalid-map if the image is not a Haar graph of G.
ConnSet transport_connection_set(const FiniteGroup& g, const Permutation& m, ConnSet s);

// Reads the connection set off a Haar-positioned graph, or nullopt if the
// graph is not of the form haar(G, T).
std::optional<ConnSet> connection_set_of(const FiniteGroup& g, const Digraph& gr);

} // namespace haariso

#endif
