#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "atomristor/device.hpp"
#include "atomristor/error.hpp"

using namespace atomristor;

namespace {

DeviceSpec bare() {
  DeviceSpec s;
  s.defects.clear();
  return s;
}

DeviceSpec with_defect(double location, double depth, LrsShape shape = LrsShape::deepened) {
  DeviceSpec s = bare();
  DefectSpec d;
  d.location_nm = location;
  d.depth_ev = depth;
  d.lrs_shape = shape;
  s.defects.push_back(d);
  return s;
}

}  // namespace

TEST_CASE("grid point counts follow the region lengths") {
  const auto g = build_grid(bare());
  CHECK(g.metal_points == 30);
  CHECK(g.insulator_points == 30);
  CHECK(g.size() == 90);
  for (std::size_t i = 1; i < g.size(); ++i) {
    CHECK(std::abs(g.positions_nm[i] - g.positions_nm[i - 1] - 0.05) < 1e-14);
  }
}

TEST_CASE("single-defect stack rounds to a 1 nm insulator") {
  DeviceSpec s = bare();
  s.metal_length_nm = 0.35;
  s.insulator_length_nm = 0.35 + 0.32 + 0.35;
  const auto g = build_grid(s);
  CHECK(g.insulator_points == 20);
  CHECK(g.metal_points == 7);
  CHECK(g.insulator_length_nm() == doctest::Approx(1.0));
}

TEST_CASE("sub-cell regions are rejected") {
  DeviceSpec s = bare();
  s.insulator_length_nm = 0.01;
  try {
    build_grid(s);
    FAIL("expected a geometry error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::geometry);
  }
}

TEST_CASE("junction labels cover three points per interface") {
  const auto g = build_grid(bare());
  const int x = 30, y = 30;
  for (int i = 1; i <= 2 * x + y; ++i) {
    const Region r = g.regions[static_cast<std::size_t>(i - 1)];
    const bool junction = (i >= x - 1 && i <= x + 1) || (i >= x + y - 1 && i <= x + y + 1);
    if (junction) {
      CHECK(r == Region::junction);
    } else if (i < x - 1 || i > x + y + 1) {
      CHECK(r == Region::metal);
    } else {
      CHECK(r == Region::insulator);
    }
  }
}

TEST_CASE("zero-bias barrier is rectangular and symmetric") {
  const auto p = hrs_profile(bare(), 0.0);
  const auto g = build_grid(bare());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const bool inside = i >= g.insulator_begin() && i < g.insulator_end();
    CHECK(p.values_ev[i] == (inside ? 1.0 : 0.0));
    CHECK(p.values_ev[i] == p.values_ev[g.size() - 1 - i]);
  }
}

TEST_CASE("bias tilts the barrier and lowers the right lead") {
  const auto p = hrs_profile(bare(), 1.0);
  const auto g = build_grid(bare());
  CHECK(p.values_ev.front() == 0.0);
  CHECK(p.values_ev.back() == -1.0);
  const std::size_t b = g.insulator_begin();
  for (int k = 0; k < g.insulator_points; ++k) {
    CHECK(p.values_ev[b + static_cast<std::size_t>(k)] ==
          doctest::Approx(1.0 - (k + 0.5) / g.insulator_points).epsilon(1e-14));
  }
  for (std::size_t i = g.insulator_end(); i < g.size(); ++i) CHECK(p.values_ev[i] == -1.0);
}

TEST_CASE("vacancy well dips by its depth") {
  const auto spec = with_defect(0.18, 0.10);
  const auto p = hrs_profile(spec, 0.0);
  const auto g = build_grid(spec);
  const double lowest = *std::min_element(p.values_ev.begin() + static_cast<long>(g.insulator_begin()),
                                          p.values_ev.begin() + static_cast<long>(g.insulator_end()));
  CHECK(lowest == doctest::Approx(0.90).epsilon(1e-12));
  // Cell centred at 0.175 nm is fully covered by [0.13, 0.23].
  CHECK(p.values_ev[g.insulator_begin() + 3] == doctest::Approx(0.90));
}

TEST_CASE("deep wells are clipped at the local lead level") {
  const auto p = hrs_profile(with_defect(0.5, 5.0), 0.0);
  CHECK(*std::min_element(p.values_ev.begin(), p.values_ev.end()) == 0.0);
}

TEST_CASE("overlapping wells combine by pointwise minimum") {
  DeviceSpec s = with_defect(0.50, 0.2);
  DefectSpec d = s.defects[0];
  d.location_nm = 0.55;
  d.depth_ev = 0.3;
  s.defects.push_back(d);
  const auto both = hrs_profile(s, 0.3);
  DeviceSpec first = s, second = s;
  first.defects.pop_back();
  second.defects.erase(second.defects.begin());
  const auto a = hrs_profile(first, 0.3), b = hrs_profile(second, 0.3);
  for (std::size_t i = 0; i < both.values_ev.size(); ++i) {
    CHECK(both.values_ev[i] == std::min(a.values_ev[i], b.values_ev[i]));
  }
}

TEST_CASE("substituted defect pulls the onset to zero") {
  const auto spec = with_defect_state(with_defect(0.175, 0.1), DefectState::metal_substituted);
  const auto p = lrs_profile(spec, 0.0);
  const auto g = build_grid(spec);
  CHECK(std::abs(p.values_ev[g.insulator_begin() + 3]) < 1e-12);
}

TEST_CASE("vacancy-only spec gives identical HRS and LRS profiles") {
  const auto spec = with_defect(0.3, 0.1);
  CHECK(lrs_profile(spec, 0.4).values_ev == hrs_profile(spec, 0.4).values_ev);
}

TEST_CASE("hrs_profile refuses substituted defects") {
  const auto spec = with_defect_state(with_defect(0.3, 0.1), DefectState::metal_substituted);
  CHECK_THROWS_AS(hrs_profile(spec, 0.0), Error);
}

TEST_CASE("LRS never exceeds HRS inside the insulator") {
  for (auto shape : {LrsShape::deepened, LrsShape::coulomb, LrsShape::widened, LrsShape::unchanged}) {
    for (double bias : {0.0, 0.4, 1.0}) {
      const auto spec = with_defect(0.6, 0.15, shape);
      const auto h = state_profile(spec, ResistanceState::hrs, bias);
      const auto l = state_profile(spec, ResistanceState::lrs, bias);
      for (std::size_t i = 0; i < h.values_ev.size(); ++i) CHECK(l.values_ev[i] <= h.values_ev[i]);
    }
  }
}

TEST_CASE("coulomb tail has decayed below 5 percent of the barrier at 0.3 nm") {
  const auto spec = with_defect_state(with_defect(0.75, 0.0, LrsShape::coulomb),
                                      DefectState::metal_substituted);
  const auto p = lrs_profile(spec, 0.0);
  const auto g = build_grid(spec);
  for (std::size_t i = g.insulator_begin(); i < g.insulator_end(); ++i) {
    const double r = std::abs(g.positions_nm[i] - g.positions_nm[g.insulator_begin()] -
                              0.75 + 0.5 * g.spacing_nm);
    if (r >= 0.3) CHECK(1.0 - p.values_ev[i] < 0.05);
  }
  CHECK(p.values_ev[g.insulator_begin() + 15] == 0.0);
}

TEST_CASE("widened shape is twice as wide as deepened") {
  auto count_floor = [](LrsShape shape) {
    const auto spec = with_defect_state(with_defect(0.75, 0.0, shape), DefectState::metal_substituted);
    const auto p = lrs_profile(spec, 0.0);
    const auto g = build_grid(spec);
    int n = 0;
    for (std::size_t i = g.insulator_begin(); i < g.insulator_end(); ++i) n += p.values_ev[i] < 1e-12;
    return n;
  };
  CHECK(count_floor(LrsShape::widened) == 2 * count_floor(LrsShape::deepened));
}

TEST_CASE("profiles are bit-identical across calls") {
  const auto spec = with_defect(0.33, 0.12, LrsShape::coulomb);
  CHECK(state_profile(spec, ResistanceState::lrs, 0.7).values_ev ==
        state_profile(spec, ResistanceState::lrs, 0.7).values_ev);
}

TEST_CASE("spec validation") {
  DeviceSpec s = bare();
  s.temperature_k = 0.0;
  CHECK_THROWS_AS(s.validate(), Error);
  s = with_defect(2.0, 0.1);
  CHECK_THROWS_AS(s.validate(), Error);
  s = with_defect(0.5, -0.1);
  CHECK_THROWS_AS(s.validate(), Error);
  s = with_defect(0.5, 0.1);
  s.defects[0].width_nm = 0.01;
  CHECK_THROWS_AS(s.validate(), Error);
}
