#include "shorent/state_io.hpp"

#include <cstdio>
#include <filesystem>

#include "gtest/gtest.h"

using namespace shorent;

TEST(StateIo, RoundTripIsExact) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto s = make_random_isotropic_state(4, seed);
    const auto back = state_from_json(state_to_json(s));
    ASSERT_EQ(back.num_qubits(), 4);
    for (std::size_t j = 0; j < s.dimension(); ++j) EXPECT_EQ(back[j], s[j]);
  }
}

TEST(StateIo, WriterFormat) {
  const std::string text = state_to_json(make_basis_state(1, 1));
  EXPECT_EQ(text, "{\"num_qubits\": 1, \"amplitudes\": [[0, 0], [1, 0]]}\n");
  const std::string third = state_to_json(StateVector(std::vector<Complex>{1.0 / 3.0, 0.0}));
  EXPECT_NE(third.find("0.33333333333333331"), std::string::npos);
}

TEST(StateIo, RejectsBadInput) {
  EXPECT_THROW(state_from_json("{\"amplitudes\": [[1,0],[0,0],[0,0]]}"), std::invalid_argument);
  EXPECT_THROW(state_from_json("{\"num_qubits\": 2, \"amplitudes\": [[1,0],[0,0]]}"), std::invalid_argument);
  EXPECT_THROW(state_from_json("not json"), std::invalid_argument);
  EXPECT_THROW(state_from_json("{\"amplitudes\": [1, 0]}"), std::invalid_argument);
  EXPECT_THROW(state_from_json("{}"), std::invalid_argument);
}

TEST(StateIo, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "shorent_state_io_test.json";
  const auto s = make_periodic_state({3, 3, 1});
  write_state_file(path, s);
  const auto back = read_state_file(path);
  for (std::size_t j = 0; j < s.dimension(); ++j) EXPECT_EQ(back[j], s[j]);
  std::filesystem::remove(path);
  EXPECT_THROW(read_state_file(path), std::runtime_error);
}
