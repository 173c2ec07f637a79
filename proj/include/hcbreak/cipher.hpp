#pragma once

#include "hcbreak/bytes.hpp"

namespace hcbreak::cipher {

// All functions require equal, non-empty lengths (LengthMismatch /
// PreconditionError otherwise) and c0 in [1, 255].

/// First masking pass:
///   t(1) = p(1) ^ k(1) ^ (c0 + k(1)),  t(i) = p(i) ^ k(i-1) ^ (t(i-1) + k(i)).
ByteSeq confusion1(ByteView plain, ByteView key, Byte c0);

/// Second masking pass. The first element wraps around to t(L):
///   c(1) = t(1) ^ k(1) ^ (t(L) + k(1)),  c(i) = t(i) ^ k(i-1) ^ (c(i-1) + k(i)).
ByteSeq confusion2(ByteView inter, ByteView key);

ByteSeq encrypt(ByteView plain, ByteView key, Byte c0);

/// Undoes the second pass (last element first), then the first.
ByteSeq decrypt(ByteView cipher, ByteView key, Byte c0);

/// Inverse of confusion2 alone; exposed for the attack code and tests.
ByteSeq invert_confusion2(ByteView cipher, ByteView key);

}  // namespace hcbreak::cipher
