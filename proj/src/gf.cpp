#include "gf.hpp"

namespace streamrelay {

namespace {

// schoolbook carry-less multiply + reduction, used only for table construction
uint32_t slow_mul(uint32_t x, uint32_t y, uint32_t poly, int bits) {
    uint32_t acc = 0;
    while (y != 0) {
        if (y & 1) acc ^= x;
        y >>= 1;
        x <<= 1;
        if (x >> bits) x ^= poly;
    }
    return acc;
}

int width_bits(uint32_t order) {
    int bits = 0;
    while ((1u << bits) < order) ++bits;
    return bits;
}

}  // namespace

Field::Field(uint32_t order, uint32_t poly, uint16_t generator)
    : order_(order), poly_(poly), generator_(generator) {
    const int bits = width_bits(order);
    exp_.assign(2 * (order - 1), 0);
    log_.assign(order, 0);
    std::vector<bool> seen(order, false);
    uint32_t v = 1;
    for (uint32_t i = 0; i < order - 1; ++i) {
        if (seen[v]) fail(ErrorCode::kInternal, "gf: generator is not primitive");
        seen[v] = true;
        exp_[i] = static_cast<uint16_t>(v);
        exp_[i + order - 1] = static_cast<uint16_t>(v);
        log_[v] = i;
        v = slow_mul(v, generator, poly, bits);
    }
    if (v != 1) fail(ErrorCode::kInternal, "gf: generator order mismatch");
}

const Field& Field::of(uint32_t order) {
    static const Field gf256(256, 0x11B, 0x03);
    static const Field gf65536(65536, 0x1100B, 0x02);
    switch (order) {
        case 256: return gf256;
        case 65536: return gf65536;
        default: fail(ErrorCode::kInvalidArgument, "gf: unsupported field order (use 256 or 65536)");
    }
}

namespace {

const Field& common_field(Elem x, Elem y) {
    if (x.order != y.order) fail(ErrorCode::kInvalidArgument, "gf: mismatched field orders");
    const Field& f = Field::of(x.order);
    if (x.value >= f.order() || y.value >= f.order())
        fail(ErrorCode::kInvalidArgument, "gf: element value outside field");
    return f;
}

}  // namespace

Elem add(Elem x, Elem y) { return {common_field(x, y).add(x.value, y.value), x.order}; }

Elem mul(Elem x, Elem y) { return {common_field(x, y).mul(x.value, y.value), x.order}; }

Elem inv(Elem x) {
    const Field& f = Field::of(x.order);
    if (x.value >= f.order()) fail(ErrorCode::kInvalidArgument, "gf: element value outside field");
    return {f.inv(x.value), x.order};
}

}  // namespace streamrelay
