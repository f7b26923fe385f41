#pragma once

#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace streamrelay {

// Characteristic-2 finite field with exp/log multiplication tables.
// Two orders are supported, each with one fixed reduction polynomial so that
// encoded symbols are bit-exact across builds:
//   GF(2^8):  x^8 + x^4 + x^3 + x + 1        (0x11B), generator 0x03
//   GF(2^16): x^16 + x^12 + x^3 + x + 1      (0x1100B), generator 0x02
class Field {
public:
    static const Field& of(uint32_t order);

    uint32_t order() const { return order_; }
    uint32_t reduction_poly() const { return poly_; }
    uint16_t generator() const { return generator_; }

    uint16_t add(uint16_t x, uint16_t y) const { return x ^ y; }

    uint16_t mul(uint16_t x, uint16_t y) const {
        if (x == 0 || y == 0) return 0;
        return exp_[log_[x] + log_[y]];
    }

    uint16_t inv(uint16_t x) const {
        if (x == 0) fail(ErrorCode::kInvalidArgument, "gf: zero has no inverse");
        return exp_[order_ - 1 - log_[x]];
    }

    uint16_t div(uint16_t x, uint16_t y) const { return mul(x, inv(y)); }

    // generator^e for e >= 0
    uint16_t alpha_pow(uint32_t e) const { return exp_[e % (order_ - 1)]; }

private:
    Field(uint32_t order, uint32_t poly, uint16_t generator);

    uint32_t order_;
    uint32_t poly_;
    uint16_t generator_;
    std::vector<uint16_t> exp_;  // 2*(order-1) entries, avoids a modulo in mul
    std::vector<uint32_t> log_;  // order entries, log_[0] unused
};

// A field element tagged with its field order. The boundary type used by the
// C API and tests; inner loops work on raw symbols against one Field.
struct Elem {
    uint16_t value = 0;
    uint32_t order = 256;
};

Elem add(Elem x, Elem y);
Elem mul(Elem x, Elem y);
Elem inv(Elem x);

}  // namespace streamrelay
