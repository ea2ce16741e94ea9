// Copyright 2026 The qdiff Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>

#include <algorithm>
#include <iterator>

#include "qdiff/annotation.hpp"
#include "qdiff/simulator.hpp"
#include "test_support.hpp"

using namespace qdiff;

namespace {

using Indices = std::vector<Index>;

// Brute-force enumeration, independent of the library's bit tricks.
Indices enumerate_matching(int n, const ControlSpec &controls, int target = -1, int bit = 0) {
    Indices out;
    for (Index k = 0; k < (Index{1} << n); ++k) {
        bool ok = true;
        for (const auto &c : controls) {
            const bool set = (k >> c.wire) & 1U;
            ok = ok && (set == (c.polarity == Polarity::Control));
        }
        if (target >= 0) {
            ok = ok && static_cast<int>((k >> target) & 1U) == bit;
        }
        if (ok) {
            out.push_back(k);
        }
    }
    return out;
}

Circuit one_gate(int n, Gate g, std::vector<int> targets, ControlSpec controls = {}) {
    return Circuit{n, {Layer{{GatePlacement{g, std::move(targets), std::move(controls)}}}}};
}

double max_dev(const StateVector &a, const StateVector &b) {
    return (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff();
}

StateVector replay(const Circuit &c, const StateVector &in, std::size_t layer) {
    return apply_annotation(in, annotate_layer(c, layer));
}

} // namespace

TEST(AffectedSet, Examples) {
    EXPECT_EQ(affected_set(3, {}), (Indices{0, 1, 2, 3, 4, 5, 6, 7}));
    EXPECT_EQ(affected_set(3, {{0, Polarity::Control}}), (Indices{1, 3, 5, 7}));
    const ControlSpec mixed{{0, Polarity::Control}, {2, Polarity::Anticontrol}};
    EXPECT_EQ(affected_set(4, mixed), (Indices{1, 3, 9, 11}));
    EXPECT_EQ(affected_set(4, mixed), enumerate_matching(4, mixed));
}

TEST(Partition, Examples) {
    const auto p = even_odd_partition(3, 1, {});
    EXPECT_EQ(p.odd, (Indices{2, 3, 6, 7}));
    EXPECT_EQ(p.even, (Indices{0, 1, 4, 5}));
    EXPECT_EQ(even_odd_partition(1, 0, {}), (AmplitudePartition{{0}, {1}}));
    EXPECT_EQ(even_odd_partition(3, 1, {{0, Polarity::Control}}).odd, (Indices{3, 7}));
    EXPECT_THROW((void)even_odd_partition(3, 1, {{1, Polarity::Control}}), ValidationError);
}

TEST(Partition, SizesAndBijectionAgreeWithEnumeration) {
    qdiff::test::CircuitGen gen(4);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = gen.uniform_int(1, 6);
        const auto p = gen.random_placement(n, false);
        const int t = p.targets[0];
        const auto part = even_odd_partition(n, t, p.controls);
        EXPECT_EQ(part.even, enumerate_matching(n, p.controls, t, 0));
        EXPECT_EQ(part.odd, enumerate_matching(n, p.controls, t, 1));
        const Index expected = Index{1} << (n - 1 - static_cast<int>(p.controls.size()));
        ASSERT_EQ(part.even.size(), expected);
        for (std::size_t i = 0; i < part.even.size(); ++i) {
            EXPECT_EQ(part.even[i] ^ (Index{1} << t), part.odd[i]);
        }
    }
}

// Partition under controls A ∪ B is the intersection of the partitions
// under A and under B.
TEST(Partition, ControlIntersection) {
    qdiff::test::CircuitGen gen(12);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = gen.uniform_int(2, 6);
        const auto p = gen.random_placement(n, false);
        ControlSpec a;
        ControlSpec b;
        for (const auto &c : p.controls) {
            (gen.uniform_int(0, 1) ? a : b).push_back(c);
        }
        const int t = p.targets[0];
        const auto whole = even_odd_partition(n, t, p.controls);
        const auto pa = even_odd_partition(n, t, a);
        const auto pb = even_odd_partition(n, t, b);
        Indices even;
        Indices odd;
        std::set_intersection(pa.even.begin(), pa.even.end(), pb.even.begin(), pb.even.end(),
                              std::back_inserter(even));
        std::set_intersection(pa.odd.begin(), pa.odd.end(), pb.odd.begin(), pb.odd.end(),
                              std::back_inserter(odd));
        EXPECT_EQ(whole.even, even);
        EXPECT_EQ(whole.odd, odd);
    }
}

TEST(Annotate, ZOnWireTwo) {
    const auto a = annotate_layer(one_gate(3, Gate::of(GateKind::Z), {2}), 0);
    const auto *r = std::get_if<Rotation>(&a);
    ASSERT_NE(r, nullptr);
    EXPECT_EQ(r->subset, (Indices{4, 5, 6, 7}));
    EXPECT_DOUBLE_EQ(r->angle, kPi);
    EXPECT_EQ(r->color, Color::Green);
}

TEST(Annotate, RotationFamilyAngles) {
    const std::vector<std::pair<Gate, double>> cases{
        {Gate::of(GateKind::S), kPi / 2},          {Gate::of(GateKind::Sdg), -kPi / 2},
        {Gate::of(GateKind::T), kPi / 4},          {Gate::of(GateKind::Tdg), -kPi / 4},
        {Gate::of(GateKind::ZPow, 0.3), 0.3 * kPi}, {Gate::of(GateKind::Phase, 1.1), 1.1},
        {Gate::of(GateKind::Phase, 4.0), 4.0 - 2 * kPi}};
    for (const auto &[g, angle] : cases) {
        const auto a = annotate_layer(one_gate(2, g, {0}), 0);
        const auto *r = std::get_if<Rotation>(&a);
        ASSERT_NE(r, nullptr) << gate_token(g);
        EXPECT_NEAR(r->angle, angle, 1e-15) << gate_token(g);
        EXPECT_EQ(r->subset, (Indices{1, 3}));
    }
    const auto gp = annotate_layer(one_gate(2, Gate::of(GateKind::GlobalPhase, 0.5), {0},
                                            {{1, Polarity::Anticontrol}}),
                                   0);
    EXPECT_EQ(std::get<Rotation>(gp).subset, (Indices{0, 1}));
}

TEST(Annotate, YOnSingleWire) {
    const auto a = annotate_layer(one_gate(1, Gate::of(GateKind::Y), {0}), 0);
    const auto *d = std::get_if<DualRotation>(&a);
    ASSERT_NE(d, nullptr);
    EXPECT_EQ(d->partition, (AmplitudePartition{{0}, {1}}));
    EXPECT_DOUBLE_EQ(d->angle_even, kPi / 2);
    EXPECT_DOUBLE_EQ(d->angle_odd, -kPi / 2);
    EXPECT_TRUE(d->exchange);
}

TEST(Annotate, XAndGeneralizedGates) {
    const auto x = std::get<DualRotation>(annotate_layer(one_gate(1, Gate::of(GateKind::X), {0}), 0));
    EXPECT_EQ(x.angle_even, 0.0);
    EXPECT_EQ(x.angle_odd, 0.0);
    EXPECT_TRUE(x.exchange);
    const auto zg =
        std::get<DualRotation>(annotate_layer(one_gate(1, Gate::of(GateKind::ZG, 0.1, 0.2), {0}), 0));
    EXPECT_FALSE(zg.exchange);
    const auto yg =
        std::get<DualRotation>(annotate_layer(one_gate(1, Gate::of(GateKind::YG, 0.1, 0.2), {0}), 0));
    EXPECT_TRUE(yg.exchange);
    const auto hg =
        std::get<Butterfly>(annotate_layer(one_gate(1, Gate::of(GateKind::HG, 0.1, 0.2), {0}), 0));
    EXPECT_DOUBLE_EQ(hg.angle_even, 0.1);
    EXPECT_DOUBLE_EQ(hg.angle_odd, 0.2);
    const auto h = std::get<Butterfly>(annotate_layer(one_gate(1, Gate::of(GateKind::H), {0}), 0));
    EXPECT_EQ(h.angle_even, 0.0);
}

TEST(Annotate, UnsupportedLayers) {
    const auto rx = annotate_layer(one_gate(2, Gate::of(GateKind::RX, 0.3), {1}), 0);
    ASSERT_FALSE(is_supported(rx));
    EXPECT_NE(std::get<Unsupported>(rx).reason.find("non-core"), std::string::npos);

    const auto two = parse_circuit(R"j({"wires":2,"cols":[["X","X"]]})j");
    EXPECT_FALSE(is_supported(annotate_layer(two, 0)));
    const auto empty = parse_circuit(R"j({"wires":2,"cols":[[]]})j");
    EXPECT_FALSE(is_supported(annotate_layer(empty, 0)));
    EXPECT_THROW((void)annotate_layer(empty, 1), ValidationError);
    EXPECT_THROW((void)apply_annotation(StateVector::zero(2), rx), Error);
}

TEST(Annotate, SwapPairsAndLayoutClass) {
    const auto c = one_gate(4, Gate::of(GateKind::Swap), {1, 3});
    const auto s = std::get<SwapPairs>(annotate_layer(c, 0, make_layout(4, 1)));
    EXPECT_EQ(s.layout_class, LayoutClass::SameColumn);
    // bit1=1,bit3=0 paired with bit1=0,bit3=1
    const std::vector<std::pair<Index, Index>> want{{2, 8}, {3, 9}, {6, 12}, {7, 13}};
    EXPECT_EQ(s.pairs, want);
    const auto controlled = one_gate(4, Gate::of(GateKind::Swap), {1, 3}, {{0, Polarity::Control}});
    EXPECT_EQ(std::get<SwapPairs>(annotate_layer(controlled, 0)).pairs.size(), 2U);
}

TEST(ApplyAnnotation, RotationIsZ) {
    const auto in = StateVector::from_amplitudes(Eigen::Vector2cd(cplx(0.6, 0), cplx(0, 0.8)));
    const auto out = apply_annotation(in, Rotation{{1}, kPi, kPi, Color::Green});
    EXPECT_NEAR(std::abs(out[0] - cplx(0.6, 0)), 0, 1e-15);
    EXPECT_NEAR(std::abs(out[1] - cplx(0, -0.8)), 0, 1e-15);
}

// The three probability-pair cases on 3-qubit circuits that first spread
// a single amplitude with H on every wire, then cancel it the same way.
TEST(ApplyAnnotation, HadamardCases) {
    const auto c = parse_circuit(
        R"j({"wires":3,"cols":[["H"],["-","H"],["-","-","H"],["-","-","H"],["-","H"],["H"]]})j");
    const auto states = simulate(c);
    // Case 1: every (p_e, 0) pair spreads evenly.
    for (std::size_t k = 0; k < 3; ++k) {
        const auto part = std::get<Butterfly>(annotate_layer(c, k)).partition;
        const auto before = states[k].probabilities();
        const auto after = replay(c, states[k], k).probabilities();
        for (std::size_t i = 0; i < part.even.size(); ++i) {
            const auto e = static_cast<Eigen::Index>(part.even[i]);
            const auto o = static_cast<Eigen::Index>(part.odd[i]);
            ASSERT_EQ(before(o), 0.0);
            EXPECT_NEAR(after(e), before(e) / 2, 1e-12);
            EXPECT_NEAR(after(o), before(e) / 2, 1e-12);
        }
    }
    // Case 2: equal-phase (p, p) pairs concentrate on even.
    for (std::size_t k = 3; k < 6; ++k) {
        const auto part = std::get<Butterfly>(annotate_layer(c, k)).partition;
        const auto before = states[k].probabilities();
        const auto after = replay(c, states[k], k).probabilities();
        for (std::size_t i = 0; i < part.even.size(); ++i) {
            const auto e = static_cast<Eigen::Index>(part.even[i]);
            const auto o = static_cast<Eigen::Index>(part.odd[i]);
            EXPECT_NEAR(before(e), before(o), 1e-15);
            EXPECT_NEAR(after(e), 2 * before(e), 1e-12);
            EXPECT_NEAR(after(o), 0.0, 1e-12);
        }
    }
}

TEST(ApplyAnnotation, HadamardCaseThree) {
    // A doubly controlled Z puts pair (110, 111) pi apart; the final H on
    // wire 0 then concentrates that pair on the odd state.
    const auto c = parse_circuit(
        R"j({"wires":3,"cols":[["H"],["-","H"],["-","-","H"],["Z","C","C"],["H"]]})j");
    const auto states = simulate(c);
    const auto after = replay(c, states[4], 4).probabilities();
    const double p = states[4].probabilities()(6);
    EXPECT_NEAR(p, 0.125, 1e-15);
    EXPECT_NEAR(after(6), 0.0, 1e-12);
    EXPECT_NEAR(after(7), 2 * p, 1e-12);
    EXPECT_NEAR(after(0), 2 * p, 1e-12);
    EXPECT_NEAR(after(1), 0.0, 1e-12);
}

TEST(Layout, Positions) {
    EXPECT_EQ(layout_position(14, make_layout(4, 1)), (GridPosition{7, 0}));
    const auto col = make_layout(4, 0);
    EXPECT_EQ(col.rows(), 16U);
    EXPECT_EQ(col.cols(), 1U);
    for (Index i = 0; i < 16; ++i) {
        EXPECT_EQ(layout_position(i, col), (GridPosition{i, 0}));
    }
    EXPECT_EQ(layout_position(3, make_layout(2, 2)), (GridPosition{0, 3}));
    EXPECT_EQ(default_layout(6).k, 2);
    EXPECT_EQ(default_layout(3).k, 0);
    EXPECT_THROW((void)make_layout(3, 4), ValidationError);
}

TEST(Layout, SwapClasses) {
    EXPECT_EQ(swap_layout_class(1, 3, make_layout(4, 1)), LayoutClass::SameColumn);
    EXPECT_EQ(swap_layout_class(0, 2, make_layout(4, 1)), LayoutClass::Diagonal);
    EXPECT_EQ(swap_layout_class(0, 1, make_layout(4, 3)), LayoutClass::SameRow);
    EXPECT_EQ(swap_layout_class(3, 1, make_layout(4, 1)), LayoutClass::SameColumn);
    EXPECT_THROW((void)swap_layout_class(2, 2, make_layout(4, 1)), ValidationError);
}

TEST(Layout, SwapClassMatchesPairGeometry) {
    for (int k = 0; k <= 4; ++k) {
        const auto layout = make_layout(4, k);
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                const auto s = std::get<SwapPairs>(
                    annotate_layer(one_gate(4, Gate::of(GateKind::Swap), {i, j}), 0, layout));
                for (const auto &[a, b] : s.pairs) {
                    const auto pa = layout_position(a, layout);
                    const auto pb = layout_position(b, layout);
                    const auto cls = pa.col == pb.col   ? LayoutClass::SameColumn
                                     : pa.row == pb.row ? LayoutClass::SameRow
                                                        : LayoutClass::Diagonal;
                    EXPECT_EQ(cls, s.layout_class) << i << j << " K=" << k;
                }
            }
        }
    }
}

TEST(Properties, AnnotationReplay) {
    qdiff::test::CircuitGen gen(2026);
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = gen.random_circuit(gen.uniform_int(1, 5), gen.uniform_int(1, 12), false);
        const auto states = simulate(c);
        for (std::size_t k = 0; k < c.depth(); ++k) {
            ASSERT_TRUE(is_supported(annotate_layer(c, k)));
            EXPECT_LE(max_dev(replay(c, states[k], k), states[k + 1]), 1e-12)
                << serialize_circuit(c) << " layer " << k;
        }
    }
}

TEST(Properties, NormalizeAngle) {
    EXPECT_DOUBLE_EQ(normalize_angle(kPi), kPi);
    EXPECT_DOUBLE_EQ(normalize_angle(-kPi), kPi);
    EXPECT_NEAR(normalize_angle(3 * kPi / 2), -kPi / 2, 1e-15);
    qdiff::test::CircuitGen gen(1);
    for (int i = 0; i < 1000; ++i) {
        const double a = gen.uniform(-50, 50);
        const double r = normalize_angle(a);
        EXPECT_GT(r, -kPi);
        EXPECT_LE(r, kPi);
        EXPECT_NEAR(std::abs(std::polar(1.0, a) - std::polar(1.0, r)), 0, 1e-12);
    }
}
