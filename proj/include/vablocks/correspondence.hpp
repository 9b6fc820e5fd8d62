#pragma once

#include "vablocks/intertwiner.hpp"

namespace vablocks {

// Operator table extracted from a window functional: the coefficient of
// z^{-alpha-1} (log z)^n in <x, z^{-L0}u1 (x) z^{-L0}u2 (x) z^{L0}u3>.
// The nilpotent translations preserve levels, so the table lives on the
// functional's own window.
IntwTable intw_from_block(const BlockFunctional& x);

// The functional u1 (x) u2 (x) u3 -> <I(u2,1)u1, u3>: evaluation at z = 1
// collapses to the n = 0 layer at the single weight-compatible exponent.
BlockFunctional block_from_intw(const IntwTable& t);

// block_from_intw(intw_from_block(x)) = x, exactly, on the whole window
CheckReport roundtrip_block(const BlockFunctional& x);

// intw_from_block(block_from_intw(t)) = t, table by table; recovers every
// log layer from the n = 0 data
CheckReport roundtrip_intw(const IntwTable& t);

// the collapse sum_{n1+n2+n3=k} ((-1)^{n1+n2}/(n1!n2!n3!)) x3-rewriting
// = the single token (u)^k, in the nilpotent symbol algebra
bool telescoping_verify(int k);

} // namespace vablocks
