#include "rclab/lattice.hpp"

#include <algorithm>
#include <cstdlib>

#include "rclab/error.hpp"

namespace rclab {

namespace {

std::int64_t ipow(std::int64_t base, int e) {
    std::int64_t out = 1;
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

}  // namespace

void check_dimension(int d) {
    if (d < 1 || d > kMaxDim) {
        throw Error("lattice dimension must be in 1.." + std::to_string(kMaxDim) + ", got " + std::to_string(d));
    }
}

int linf_norm(const Site& s, int d) {
    int m = 0;
    for (int i = 0; i < d; ++i) m = std::max(m, std::abs(s[i]));
    return m;
}

int linf_distance(const Site& a, const Site& b, int d) {
    int m = 0;
    for (int i = 0; i < d; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

std::vector<Site> shell_sites(int d, int r) {
    check_dimension(d);
    if (r < 0) throw Error("shell radius must be non-negative");
    std::vector<Site> out;
    if (r == 0) {
        out.push_back(Site{});
        return out;
    }
    Site s{};
    for (int i = 0; i < d; ++i) s[i] = -r;
    // Odometer over the cube [-r, r]^d keeps lexicographic order.
    while (true) {
        if (linf_norm(s, d) == r) out.push_back(s);
        int i = d - 1;
        while (i >= 0 && s[i] == r) {
            s[i] = -r;
            --i;
        }
        if (i < 0) break;
        ++s[i];
    }
    return out;
}

std::int64_t shell_capacity(int d, int r) {
    if (r < 0) throw Error("shell radius must be non-negative");
    if (r == 0) return 1;
    return ipow(2 * r + 1, d) - ipow(2 * r - 1, d);
}

std::int64_t ball_site_count(int d, int r) {
    if (r < 0) throw Error("ball radius must be non-negative");
    return ipow(2 * r + 1, d);
}

std::string format_site(const Site& s, int d) {
    std::string out = "(";
    for (int i = 0; i < d; ++i) {
        if (i) out += ',';
        out += std::to_string(s[i]);
    }
    return out + ")";
}

}  // namespace rclab
