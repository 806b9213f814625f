#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>

#include "giantscatter/lattice.hpp"

namespace gs {

enum class Sublattice { A, B };

struct Leg {
    int cell = 1;
    Sublattice sub = Sublattice::A;

    double mu() const { return sub == Sublattice::A ? 1.0 : 0.0; }
    double nu() const { return sub == Sublattice::B ? 1.0 : 0.0; }
};

// One giant atom with legs at cells n < m.
struct SingleConfig {
    Leg leg1;
    Leg leg2;
    double g = 0.01;

    int n() const { return leg1.cell; }
    int m() const { return leg2.cell; }
    int d() const { return leg2.cell - leg1.cell; }
    std::string label() const;
};

// Separate coupling only: n1 < m1 < n2 < m2.
struct TwoAtomConfig {
    SingleConfig atom1;
    SingleConfig atom2;

    int d1() const { return atom1.d(); }
    int d2() const { return atom2.d(); }
    int d21() const { return atom2.n() - atom1.m(); }
    double g() const { return atom1.g; }
    std::string label() const { return atom1.label() + atom2.label(); }
    std::array<Leg, 4> legs() const { return {atom1.leg1, atom1.leg2, atom2.leg1, atom2.leg2}; }
};

// Upper-cases and checks an A/B string of the given length; SpecError otherwise.
std::string normalize_label(std::string_view label, std::size_t length);

SingleConfig make_single(std::string_view label, int n, int d, double g);
TwoAtomConfig make_two(std::string_view label, int n1, int d1, int d21, int d2, double g);

// SpecError on ordering or coupling violations.
void check_config(const SingleConfig& cfg);
void check_config(const TwoAtomConfig& cfg);

// kd for AA/BB, kd - phi_k for AB, kd + phi_k for BA.
double accumulated_phase(const SingleConfig& cfg, double k, const LatticeParams& p);

// A labelled configuration with distances and the sign of delta.
struct ClassTuple {
    std::string label;
    int d1 = 1;
    int d2 = 1;
    int d21 = 1;
    int delta_sign = 1;

    bool operator==(const ClassTuple&) const = default;
};

// One row of the reflection-equivalence table. A partner configuration at
// distances y_i = x[perm[i]] + offset[i] has the same spectrum as the
// canonical one at x, with delta flipped when flip is set.
struct EquivalenceRow {
    std::string_view canonical;
    std::string_view partner;
    std::array<int, 3> perm;
    std::array<int, 3> offset;
    bool flip;
};

std::span<const EquivalenceRow> equivalence_rows();

inline constexpr std::array<std::string_view, 6> canonical_classes = {
    "AAAA", "AAAB", "AABA", "ABBA", "AABB", "ABAB"};

bool is_canonical(std::string_view label);

// Maps any of the sixteen labels onto its canonical class. InvalidMapping if
// a mapped distance drops below 1.
ClassTuple equivalence_class(const ClassTuple& in);

// Forward direction of a row, used by tests and the symmetry suite.
ClassTuple apply_row(const EquivalenceRow& row, const ClassTuple& canonical);

}  // namespace gs
