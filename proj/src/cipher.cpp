#include "hcbreak/cipher.hpp"

#include "hcbreak/errors.hpp"

namespace hcbreak::cipher {

namespace {

void check_lengths(ByteView a, ByteView key) {
  if (a.empty()) throw PreconditionError("cipher: sequences must be non-empty");
  if (a.size() != key.size()) throw LengthMismatch(a.size(), key.size());
}

void check_c0(Byte c0) {
  if (c0 == 0) throw PreconditionError("cipher: c0 must lie in [1, 255]");
}

}  // namespace

ByteSeq confusion1(ByteView p, ByteView k, Byte c0) {
  check_lengths(p, k);
  check_c0(c0);
  ByteSeq t(p.size());
  t[0] = p[0] ^ k[0] ^ modadd(c0, k[0]);
  for (std::size_t i = 1; i < p.size(); ++i) {
    t[i] = p[i] ^ k[i - 1] ^ modadd(t[i - 1], k[i]);
  }
  return t;
}

ByteSeq confusion2(ByteView t, ByteView k) {
  check_lengths(t, k);
  ByteSeq c(t.size());
  c[0] = t[0] ^ k[0] ^ modadd(t.back(), k[0]);
  for (std::size_t i = 1; i < t.size(); ++i) {
    c[i] = t[i] ^ k[i - 1] ^ modadd(c[i - 1], k[i]);
  }
  return c;
}

ByteSeq encrypt(ByteView p, ByteView k, Byte c0) { return confusion2(confusion1(p, k, c0), k); }

ByteSeq invert_confusion2(ByteView c, ByteView k) {
  check_lengths(c, k);
  const std::size_t n = c.size();
  if (n == 1) {
    // c(1) = t(1) ^ k(1) ^ (t(1) + k(1)) has no unique solution: c(1) is
    // always even. Return the smallest preimage.
    for (unsigned t = 0; t < 256; ++t) {
      const auto tb = static_cast<Byte>(t);
      if ((tb ^ k[0] ^ modadd(tb, k[0])) == c[0]) return ByteSeq{tb};
    }
    throw PreconditionError("cipher: single-byte ciphertext has no preimage under this keystream");
  }
  ByteSeq t(n);
  for (std::size_t i = n - 1; i >= 1; --i) {
    t[i] = c[i] ^ k[i - 1] ^ modadd(c[i - 1], k[i]);
  }
  t[0] = c[0] ^ k[0] ^ modadd(t[n - 1], k[0]);
  return t;
}

ByteSeq decrypt(ByteView c, ByteView k, Byte c0) {
  check_c0(c0);
  ByteSeq t = invert_confusion2(c, k);
  const std::size_t n = t.size();
  ByteSeq p(n);
  for (std::size_t i = n - 1; i >= 1; --i) {
    p[i] = t[i] ^ k[i - 1] ^ modadd(t[i - 1], k[i]);
  }
  p[0] = t[0] ^ k[0] ^ modadd(c0, k[0]);
  return p;
}

}  // namespace hcbreak::cipher
