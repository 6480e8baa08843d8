#pragma once

// Occupation masks for ascending mode subsets.
//
// Modes are 0-based internally (mode j lives in bit j). Files and the CLI
// use 1-based mode labels; conversion happens only at the I/O boundary.

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace fwn {

using Mask = std::uint32_t;

/// Largest supported mode count. The Fock space has 2^d basis vectors and
/// dense operator matrices are 4^d entries, so anything near this limit is
/// only usable for vector-level operations.
inline constexpr int kMaxModes = 20;

inline int popcount(Mask m) { return std::popcount(m); }

inline Mask full_mask(int d) { return d >= 32 ? ~Mask{0} : ((Mask{1} << d) - 1); }

/// Sign of the shuffle that moves the ascending list `a` followed by the
/// ascending list `b` into ascending order: (-1)^{#{(x, y) : x in a, y in b, x > y}}.
/// The masks must be disjoint.
int shuffle_sign(Mask a, Mask b);

/// All ascending k-subsets of {0..d-1}, in lexicographic order of their
/// mode lists.
std::vector<Mask> subsets_of_size(int d, int k);

/// Fock basis ordering: by degree, then lexicographic within a degree.
bool basis_less(Mask a, Mask b);

std::vector<int> modes_of(Mask m);

/// Builds a mask from 0-based mode indices. Throws on duplicates or
/// out-of-range indices.
Mask mask_of(std::span<const int> modes, int d);

/// Sign of the permutation that sorts `tuple`; 0 when an index repeats.
int permutation_sign(std::span<const int> tuple);

/// Writes the mask of the entries of `tuple` to `out`; false when an index
/// repeats.
bool tuple_mask(std::span<const int> tuple, Mask& out);

}  // namespace fwn
