#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace chc {

// Error categories, kept coarse so the CLI can map them to exit codes.
enum class Errc {
    contract,     // caller violated a documented precondition
    bad_magic,
    bad_version,
    bad_header,
    truncated,
    corrupt,
    unsupported,  // code does not fit the machine-word packing limits
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), m_code(code) {}
    Errc code() const noexcept { return m_code; }

private:
    Errc m_code;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const char* what) {
    if (!cond) raise(code, what);
}

// ceil(log2(x)) for x >= 1; ceil_log2(1) == 0
constexpr uint32_t ceil_log2(uint64_t x) {
    return x <= 1 ? 0 : static_cast<uint32_t>(std::bit_width(x - 1));
}

// mask of the w low bits; w may be 0..64
constexpr uint64_t low_mask(uint32_t w) {
    return w >= 64 ? ~uint64_t{0} : (uint64_t{1} << w) - 1;
}

// counter threaded through query paths so tests can audit probe bounds
struct ProbeCounter {
    uint64_t probes = 0;
};

inline void count_probe(ProbeCounter* pc, uint64_t n = 1) {
    if (pc) pc->probes += n;
}

}  // namespace chc
