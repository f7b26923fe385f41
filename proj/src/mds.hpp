#pragma once

#include <span>
#include <vector>

#include "gf.hpp"

namespace streamrelay {

// A codeword with per-position erasure marks, length n.
struct ErasedWord {
    std::vector<uint16_t> symbols;
    std::vector<uint8_t> erased;  // same length as symbols
};

// Systematic [n,k] MDS erasure code. The default generator is Vandermonde
// over the evaluation points 1, alpha, alpha^2, ... row-reduced to systematic
// form, which makes every square submatrix of the parity map invertible.
class MdsCode {
public:
    MdsCode(const Field& field, int n, int k);

    // Explicit (n-k) x k parity map, row-major. Rejected unless every square
    // submatrix is invertible (checked exhaustively; n must stay small).
    MdsCode(const Field& field, int n, int k, std::vector<uint16_t> parity_rows);

    int n() const { return n_; }
    int k() const { return k_; }
    const Field& field() const { return *field_; }

    // parity map entry for parity row r (codeword position k+r), message column j
    uint16_t parity_coeff(int r, int j) const { return parity_[static_cast<size_t>(r) * k_ + j]; }

    std::vector<uint16_t> encode(std::span<const uint16_t> msg) const;
    void encode_into(std::span<const uint16_t> msg, std::span<uint16_t> out) const;

    // Recovers the k message symbols from a word with <= n-k erasures.
    // Solves only for the erased message positions, then cross-checks the
    // remaining unerased parity symbols; a mismatch reports corruption.
    std::vector<uint16_t> decode_erasures(const ErasedWord& word) const;

private:
    void validate_parity_map() const;

    const Field* field_;
    int n_;
    int k_;
    std::vector<uint16_t> parity_;  // row-major (n-k) x k
};

}  // namespace streamrelay
