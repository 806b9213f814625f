#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "giantscatter/coupling.hpp"
#include "giantscatter/errors.hpp"

using namespace gs;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::SolveFailure;  // sentinel: nothing thrown
}

std::vector<std::string> all_labels() {
    std::vector<std::string> out;
    for (int m = 0; m < 16; ++m) {
        std::string s;
        for (int b = 3; b >= 0; --b) s += (m >> b) & 1 ? 'B' : 'A';
        out.push_back(s);
    }
    return out;
}

}  // namespace

TEST_CASE("labels are case-insensitive and validated") {
    CHECK(normalize_label("abab", 4) == "ABAB");
    CHECK(kind_of([] { normalize_label("ABC", 3); }) == ErrorKind::SpecError);
    CHECK(kind_of([] { normalize_label("AB", 4); }) == ErrorKind::SpecError);
    const auto c = make_single("ba", 3, 5, 0.01);
    CHECK(c.label() == "BA");
    CHECK(c.n() == 3);
    CHECK(c.m() == 8);
    CHECK(c.d() == 5);
    CHECK(c.leg1.mu() == 0.0);
    CHECK(c.leg1.nu() == 1.0);
}

TEST_CASE("two-atom layout follows n1 < m1 < n2 < m2") {
    const auto t = make_two("AABB", 2, 3, 4, 5, 0.01);
    CHECK(t.atom1.n() == 2);
    CHECK(t.atom1.m() == 5);
    CHECK(t.atom2.n() == 9);
    CHECK(t.atom2.m() == 14);
    CHECK(t.d1() == 3);
    CHECK(t.d21() == 4);
    CHECK(t.d2() == 5);
    CHECK(t.label() == "AABB");
    CHECK(kind_of([] { make_two("AAAA", 1, 0, 1, 1, 0.01); }) == ErrorKind::SpecError);
    CHECK(kind_of([] { make_two("AAAA", 1, 1, 0, 1, 0.01); }) == ErrorKind::SpecError);
    CHECK(kind_of([] { make_single("AA", 1, 1, -0.01); }) == ErrorKind::SpecError);
}

TEST_CASE("accumulated phase per label") {
    const LatticeParams p{1.0, 0.5, Band::Upper};
    const double k = -1.1, phi = topo_phase(k, p);
    CHECK(accumulated_phase(make_single("AA", 1, 3, 0.01), k, p) == doctest::Approx(3 * k));
    CHECK(accumulated_phase(make_single("BB", 1, 3, 0.01), k, p) == doctest::Approx(3 * k));
    CHECK(accumulated_phase(make_single("AB", 1, 3, 0.01), k, p) == doctest::Approx(3 * k - phi));
    CHECK(accumulated_phase(make_single("BA", 1, 3, 0.01), k, p) == doctest::Approx(3 * k + phi));
}

TEST_CASE("equivalence table covers sixteen labels with six canonical classes") {
    std::set<std::string> partners;
    for (const auto& row : equivalence_rows()) {
        CHECK(is_canonical(row.canonical));
        CHECK_FALSE(is_canonical(row.partner));
        partners.insert(std::string(row.partner));
    }
    CHECK(partners.size() == 10);
    CHECK(partners.size() + canonical_classes.size() == 16);
}

TEST_CASE("every label maps to a canonical class and back") {
    for (const auto& label : all_labels())
        for (int sign : {1, -1}) {
            const ClassTuple in{label, 3, 4, 5, sign};
            const ClassTuple c = equivalence_class(in);
            CHECK(is_canonical(c.label));
            if (is_canonical(label)) {
                CHECK(c == in);
                continue;
            }
            bool found = false;
            for (const auto& row : equivalence_rows())
                if (row.partner == label && row.canonical == c.label) {
                    CHECK(apply_row(row, c) == in);
                    found = true;
                }
            CHECK(found);
        }
}

TEST_CASE("mapping examples") {
    CHECK(equivalence_class({"BBBB", 2, 3, 4, 1}) == ClassTuple{"AAAA", 2, 3, 4, 1});
    CHECK(equivalence_class({"ABBB", 2, 3, 4, -1}) == ClassTuple{"AAAB", 3, 2, 4, -1});
    CHECK(equivalence_class({"BAAA", 3, 2, 4, 1}) == ClassTuple{"AAAB", 2, 2, 4, -1});
    CHECK(equivalence_class({"BABA", 3, 3, 1, 1}) == ClassTuple{"ABAB", 2, 2, 2, -1});
}

TEST_CASE("mapped distances below one raise InvalidMapping") {
    // BABA with d1 = 1 would need d1 = 0 in the ABAB frame
    CHECK(kind_of([] { equivalence_class({"BABA", 1, 2, 2, 1}); }) == ErrorKind::InvalidMapping);
    CHECK(kind_of([] { equivalence_class({"AAAA", 0, 2, 2, 1}); }) == ErrorKind::SpecError);
}
