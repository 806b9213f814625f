#include "giantscatter/coupling.hpp"

#include <algorithm>
#include <cctype>

#include "giantscatter/errors.hpp"

namespace gs {

namespace {

char letter(Sublattice s) { return s == Sublattice::A ? 'A' : 'B'; }
Sublattice sub_of(char c) { return c == 'A' ? Sublattice::A : Sublattice::B; }

constexpr EquivalenceRow rows[] = {
    {"AAAA", "BBBB", {0, 1, 2}, {0, 0, 0}, false},
    {"AAAB", "ABBB", {1, 0, 2}, {0, 0, 0}, false},
    {"AAAB", "BAAA", {1, 0, 2}, {1, 0, 0}, true},
    {"AAAB", "BBBA", {0, 1, 2}, {0, 1, 0}, true},
    {"AABA", "BABB", {1, 0, 2}, {0, 0, 0}, false},
    {"AABA", "ABAA", {1, 0, 2}, {-1, 0, 1}, true},
    {"AABA", "BBAB", {0, 1, 2}, {0, -1, 1}, true},
    {"ABBA", "BAAB", {1, 0, 2}, {0, 0, 0}, false},
    {"AABB", "BBAA", {1, 0, 2}, {0, 0, 1}, true},
    {"ABAB", "BABA", {0, 1, 2}, {1, 1, -1}, true},
};

}  // namespace

std::string SingleConfig::label() const { return {letter(leg1.sub), letter(leg2.sub)}; }

std::string normalize_label(std::string_view label, std::size_t length) {
    std::string out(label);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (out.size() != length || out.find_first_not_of("AB") != std::string::npos)
        fail(ErrorKind::SpecError, "bad configuration label '" + std::string(label) + "'");
    return out;
}

void check_config(const SingleConfig& cfg) {
    if (cfg.leg1.cell < 1) fail(ErrorKind::SpecError, "cell indices start at 1");
    if (cfg.d() < 1) fail(ErrorKind::SpecError, "coupling points must satisfy m > n");
    if (!(cfg.g > 0.0)) fail(ErrorKind::SpecError, "coupling strength g must be positive");
}

void check_config(const TwoAtomConfig& cfg) {
    check_config(cfg.atom1);
    check_config(cfg.atom2);
    if (cfg.d21() < 1) fail(ErrorKind::SpecError, "atoms must not overlap: need n2 > m1");
    if (cfg.atom1.g != cfg.atom2.g) fail(ErrorKind::SpecError, "both atoms share one g");
}

SingleConfig make_single(std::string_view label, int n, int d, double g) {
    const std::string l = normalize_label(label, 2);
    SingleConfig cfg{{n, sub_of(l[0])}, {n + d, sub_of(l[1])}, g};
    check_config(cfg);
    return cfg;
}

TwoAtomConfig make_two(std::string_view label, int n1, int d1, int d21, int d2, double g) {
    const std::string l = normalize_label(label, 4);
    const int m1 = n1 + d1;
    const int n2 = m1 + d21;
    TwoAtomConfig cfg{{{n1, sub_of(l[0])}, {m1, sub_of(l[1])}, g},
                      {{n2, sub_of(l[2])}, {n2 + d2, sub_of(l[3])}, g}};
    check_config(cfg);
    return cfg;
}

double accumulated_phase(const SingleConfig& cfg, double k, const LatticeParams& p) {
    const double kd = k * cfg.d();
    if (cfg.leg1.sub == cfg.leg2.sub) return kd;
    const double phi = topo_phase(k, p);
    return cfg.leg1.sub == Sublattice::A ? kd - phi : kd + phi;
}

std::span<const EquivalenceRow> equivalence_rows() { return rows; }

bool is_canonical(std::string_view label) {
    return std::find(canonical_classes.begin(), canonical_classes.end(), label) !=
           canonical_classes.end();
}

ClassTuple apply_row(const EquivalenceRow& row, const ClassTuple& c) {
    const std::array<int, 3> x = {c.d1, c.d2, c.d21};
    std::array<int, 3> y{};
    for (int i = 0; i < 3; ++i) y[i] = x[row.perm[i]] + row.offset[i];
    return {std::string(row.partner), y[0], y[1], y[2], row.flip ? -c.delta_sign : c.delta_sign};
}

ClassTuple equivalence_class(const ClassTuple& in) {
    const std::string label = normalize_label(in.label, 4);
    if (in.d1 < 1 || in.d2 < 1 || in.d21 < 1)
        fail(ErrorKind::SpecError, "distances must be at least 1");
    if (in.delta_sign != 1 && in.delta_sign != -1)
        fail(ErrorKind::SpecError, "delta_sign must be +1 or -1");
    if (is_canonical(label)) return {label, in.d1, in.d2, in.d21, in.delta_sign};

    for (const auto& row : rows) {
        if (row.partner != label) continue;
        const std::array<int, 3> y = {in.d1, in.d2, in.d21};
        std::array<int, 3> x{};
        for (int i = 0; i < 3; ++i) x[row.perm[i]] = y[i] - row.offset[i];
        if (x[0] < 1 || x[1] < 1 || x[2] < 1)
            fail(ErrorKind::InvalidMapping, label + " at (" + std::to_string(in.d1) + "," +
                                                std::to_string(in.d2) + "," +
                                                std::to_string(in.d21) + ") maps below distance 1");
        return {std::string(row.canonical), x[0], x[1], x[2],
                row.flip ? -in.delta_sign : in.delta_sign};
    }
    fail(ErrorKind::InvalidMapping, "no table row for " + label);
}

}  // namespace gs
