#include <doctest.h>

#include <random>
#include <vector>

#include "sepkit/errors.hpp"
#include "sepkit/kernels.hpp"

using namespace sepkit::kernels;

namespace {

std::vector<Isa> available() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon})
    if (isa_available(isa)) out.push_back(isa);
  return out;
}

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_CASE("scalar kernels on hand inputs") {
  const std::vector<double> a = {1, 2, 3}, b = {4, -5, 6};
  CHECK(scalar::dot(a.data(), b.data(), 3) == 12.0);
  CHECK(scalar::squared_distance(a.data(), b.data(), 3) == 9 + 49 + 9);
  CHECK(scalar::min_pair_sum(a.data(), b.data(), 3) == -3.0);
  CHECK(scalar::sum(b.data(), 3) == 5.0);
  std::size_t idx[3];
  CHECK(scalar::select_pair_sum_below(a.data(), b.data(), 3, 6.0, idx) == 2);
  CHECK(idx[0] == 0);
  CHECK(idx[1] == 1);
  CHECK(scalar::dot(a.data(), b.data(), 0) == 0.0);
}

TEST_CASE("every available variant matches the scalar reference") {
  std::mt19937_64 rng(99);
  const KernelTable& ref = table(Isa::kScalar);
  for (Isa isa : available()) {
    CAPTURE(isa_name(isa));
    const KernelTable& k = table(isa);
    for (std::size_t n = 0; n <= 67; ++n) {
      const auto a = random_vector(n, rng), b = random_vector(n, rng);
      const double scale = 1.0 + static_cast<double>(n);
      CHECK(k.dot(a.data(), b.data(), n) == doctest::Approx(ref.dot(a.data(), b.data(), n)).epsilon(1e-12).scale(scale));
      CHECK(k.squared_distance(a.data(), b.data(), n) ==
            doctest::Approx(ref.squared_distance(a.data(), b.data(), n)).epsilon(1e-12).scale(scale));
      CHECK(k.sum(a.data(), n) == doctest::Approx(ref.sum(a.data(), n)).epsilon(1e-12).scale(scale));
      if (n > 0) CHECK(k.min_pair_sum(a.data(), b.data(), n) == ref.min_pair_sum(a.data(), b.data(), n));
      std::vector<std::size_t> x(n + 1), y(n + 1);
      const std::size_t cx = k.select_pair_sum_below(a.data(), b.data(), n, 0.5, x.data());
      const std::size_t cy = ref.select_pair_sum_below(a.data(), b.data(), n, 0.5, y.data());
      REQUIRE(cx == cy);
      for (std::size_t i = 0; i < cx; ++i) CHECK(x[i] == y[i]);
    }
  }
}

TEST_CASE("dispatch can be pinned and restored") {
  const Isa before = active_isa();
  set_active_isa(Isa::kScalar);
  CHECK(active_isa() == Isa::kScalar);
  const std::vector<double> a = {1, 1}, b = {2, 2};
  CHECK(dot(a, b) == 4.0);
  set_active_isa(before);
  CHECK(active_isa() == before);
  CHECK(isa_available(Isa::kScalar));
  CHECK(isa_available(detected_isa()));
  for (Isa isa : {Isa::kAvx2, Isa::kNeon})
    if (!isa_available(isa)) CHECK_THROWS_AS(set_active_isa(isa), sepkit::DomainError);
}
