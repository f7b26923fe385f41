#include "mds.hpp"

#include <string>

namespace streamrelay {

namespace {

// Gauss-Jordan inversion of a t x t matrix over f; returns false if singular.
bool invert(const Field& f, std::vector<uint16_t>& m, int t) {
    std::vector<uint16_t> aug(static_cast<size_t>(t) * 2 * t, 0);
    for (int r = 0; r < t; ++r) {
        for (int c = 0; c < t; ++c) aug[r * 2 * t + c] = m[r * t + c];
        aug[r * 2 * t + t + r] = 1;
    }
    for (int col = 0; col < t; ++col) {
        int piv = -1;
        for (int r = col; r < t; ++r) {
            if (aug[r * 2 * t + col] != 0) {
                piv = r;
                break;
            }
        }
        if (piv < 0) return false;
        if (piv != col) {
            for (int c = 0; c < 2 * t; ++c) std::swap(aug[piv * 2 * t + c], aug[col * 2 * t + c]);
        }
        const uint16_t s = f.inv(aug[col * 2 * t + col]);
        for (int c = 0; c < 2 * t; ++c) aug[col * 2 * t + c] = f.mul(aug[col * 2 * t + c], s);
        for (int r = 0; r < t; ++r) {
            if (r == col) continue;
            const uint16_t factor = aug[r * 2 * t + col];
            if (factor == 0) continue;
            for (int c = 0; c < 2 * t; ++c)
                aug[r * 2 * t + c] ^= f.mul(factor, aug[col * 2 * t + c]);
        }
    }
    for (int r = 0; r < t; ++r)
        for (int c = 0; c < t; ++c) m[r * t + c] = aug[r * 2 * t + t + c];
    return true;
}

// Solves A x = rhs in place for a t x t system; A destroyed. Returns false if singular.
bool solve(const Field& f, std::vector<uint16_t>& a, std::vector<uint16_t>& rhs, int t) {
    for (int col = 0; col < t; ++col) {
        int piv = -1;
        for (int r = col; r < t; ++r) {
            if (a[r * t + col] != 0) {
                piv = r;
                break;
            }
        }
        if (piv < 0) return false;
        if (piv != col) {
            for (int c = 0; c < t; ++c) std::swap(a[piv * t + c], a[col * t + c]);
            std::swap(rhs[piv], rhs[col]);
        }
        const uint16_t s = f.inv(a[col * t + col]);
        for (int c = 0; c < t; ++c) a[col * t + c] = f.mul(a[col * t + c], s);
        rhs[col] = f.mul(rhs[col], s);
        for (int r = 0; r < t; ++r) {
            if (r == col) continue;
            const uint16_t factor = a[r * t + col];
            if (factor == 0) continue;
            for (int c = 0; c < t; ++c) a[r * t + c] ^= f.mul(factor, a[col * t + c]);
            rhs[r] ^= f.mul(factor, rhs[col]);
        }
    }
    return true;
}

void check_dimensions(const Field& f, int n, int k) {
    if (k < 1 || n < k) fail(ErrorCode::kInvalidArgument, "mds: need 0 < k <= n");
    if (static_cast<uint32_t>(n) > f.order() - 1)
        fail(ErrorCode::kInvalidArgument,
             "mds: n exceeds the number of distinct evaluation points in GF(" +
                 std::to_string(f.order()) + ")");
}

}  // namespace

MdsCode::MdsCode(const Field& field, int n, int k) : field_(&field), n_(n), k_(k) {
    check_dimensions(field, n, k);
    // Vandermonde rows at points alpha^i, then P = V_bottom * inv(V_top).
    std::vector<uint16_t> top(static_cast<size_t>(k) * k, 0);
    for (int r = 0; r < k; ++r) {
        uint16_t x = field.alpha_pow(r);
        uint16_t p = 1;
        for (int c = 0; c < k; ++c) {
            top[r * k + c] = p;
            p = field.mul(p, x);
        }
    }
    if (!invert(field, top, k)) fail(ErrorCode::kInternal, "mds: vandermonde top block singular");
    parity_.assign(static_cast<size_t>(n - k) * k, 0);
    for (int r = 0; r < n - k; ++r) {
        uint16_t x = field.alpha_pow(static_cast<uint32_t>(k + r));
        std::vector<uint16_t> row(k);
        uint16_t p = 1;
        for (int c = 0; c < k; ++c) {
            row[c] = p;
            p = field.mul(p, x);
        }
        for (int c = 0; c < k; ++c) {
            uint16_t acc = 0;
            for (int l = 0; l < k; ++l) acc ^= field.mul(row[l], top[l * k + c]);
            parity_[static_cast<size_t>(r) * k + c] = acc;
        }
    }
}

MdsCode::MdsCode(const Field& field, int n, int k, std::vector<uint16_t> parity_rows)
    : field_(&field), n_(n), k_(k), parity_(std::move(parity_rows)) {
    check_dimensions(field, n, k);
    if (parity_.size() != static_cast<size_t>(n - k) * k)
        fail(ErrorCode::kInvalidArgument, "mds: parity map has wrong shape");
    for (uint16_t v : parity_)
        if (v >= field.order()) fail(ErrorCode::kInvalidArgument, "mds: parity entry outside field");
    validate_parity_map();
}

void MdsCode::validate_parity_map() const {
    if (n_ > 16)
        fail(ErrorCode::kInvalidArgument, "mds: explicit parity maps supported only for n <= 16");
    const int rows = n_ - k_;
    const int tmax = std::min(rows, k_);
    // enumerate row/column subsets of equal size; every choice must be invertible
    for (int t = 1; t <= tmax; ++t) {
        std::vector<int> rs(t), cs(t);
        for (int i = 0; i < t; ++i) rs[i] = i;
        while (true) {
            for (int i = 0; i < t; ++i) cs[i] = i;
            while (true) {
                std::vector<uint16_t> sub(static_cast<size_t>(t) * t);
                for (int i = 0; i < t; ++i)
                    for (int j = 0; j < t; ++j) sub[i * t + j] = parity_coeff(rs[i], cs[j]);
                if (!invert(*field_, sub, t))
                    fail(ErrorCode::kInvalidArgument, "mds: parity map is not MDS");
                int i = t - 1;
                while (i >= 0 && cs[i] == k_ - t + i) --i;
                if (i < 0) break;
                ++cs[i];
                for (int j = i + 1; j < t; ++j) cs[j] = cs[j - 1] + 1;
            }
            int i = t - 1;
            while (i >= 0 && rs[i] == rows - t + i) --i;
            if (i < 0) break;
            ++rs[i];
            for (int j = i + 1; j < t; ++j) rs[j] = rs[j - 1] + 1;
        }
    }
}

std::vector<uint16_t> MdsCode::encode(std::span<const uint16_t> msg) const {
    std::vector<uint16_t> out(n_);
    encode_into(msg, out);
    return out;
}

void MdsCode::encode_into(std::span<const uint16_t> msg, std::span<uint16_t> out) const {
    if (msg.size() != static_cast<size_t>(k_))
        fail(ErrorCode::kInvalidArgument, "mds: message length must be k");
    if (out.size() != static_cast<size_t>(n_))
        fail(ErrorCode::kInvalidArgument, "mds: output length must be n");
    const Field& f = *field_;
    for (int j = 0; j < k_; ++j) out[j] = msg[j];
    for (int r = 0; r < n_ - k_; ++r) {
        uint16_t acc = 0;
        for (int j = 0; j < k_; ++j) acc ^= f.mul(parity_coeff(r, j), msg[j]);
        out[k_ + r] = acc;
    }
}

std::vector<uint16_t> MdsCode::decode_erasures(const ErasedWord& word) const {
    if (word.symbols.size() != static_cast<size_t>(n_) || word.erased.size() != static_cast<size_t>(n_))
        fail(ErrorCode::kInvalidArgument, "mds: word length must be n");
    const Field& f = *field_;

    int erased_total = 0;
    std::vector<int> erased_msg;
    for (int i = 0; i < n_; ++i) {
        if (!word.erased[i]) continue;
        ++erased_total;
        if (i < k_) erased_msg.push_back(i);
    }
    if (erased_total > n_ - k_)
        fail(ErrorCode::kTooManyErasures, "mds: " + std::to_string(erased_total) +
                                              " erasures exceed n-k = " + std::to_string(n_ - k_));

    std::vector<uint16_t> msg(word.symbols.begin(), word.symbols.begin() + k_);
    const int u = static_cast<int>(erased_msg.size());
    std::vector<int> check_rows;
    if (u > 0) {
        // take the first u unerased parity rows as the solving system
        std::vector<uint16_t> a(static_cast<size_t>(u) * u);
        std::vector<uint16_t> rhs(u);
        int eq = 0;
        for (int r = 0; r < n_ - k_; ++r) {
            if (word.erased[k_ + r]) continue;
            if (eq == u) {
                check_rows.push_back(r);
                continue;
            }
            uint16_t acc = word.symbols[k_ + r];
            for (int j = 0; j < k_; ++j) {
                if (!word.erased[j]) acc ^= f.mul(parity_coeff(r, j), word.symbols[j]);
            }
            rhs[eq] = acc;
            for (int c = 0; c < u; ++c) a[eq * u + c] = parity_coeff(r, erased_msg[c]);
            ++eq;
        }
        if (eq < u) fail(ErrorCode::kInternal, "mds: not enough parity equations");
        if (!solve(f, a, rhs, u)) fail(ErrorCode::kInternal, "mds: erasure system singular");
        for (int c = 0; c < u; ++c) msg[erased_msg[c]] = rhs[c];
    } else {
        for (int r = 0; r < n_ - k_; ++r)
            if (!word.erased[k_ + r]) check_rows.push_back(r);
    }

    // leftover unerased parity symbols must agree with the recovered message
    for (int r : check_rows) {
        uint16_t acc = 0;
        for (int j = 0; j < k_; ++j) acc ^= f.mul(parity_coeff(r, j), msg[j]);
        if (acc != word.symbols[k_ + r])
            fail(ErrorCode::kInconsistentWord, "mds: unerased symbols are inconsistent");
    }
    return msg;
}

}  // namespace streamrelay
