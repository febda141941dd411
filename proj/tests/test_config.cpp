#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cohft/config.hpp"

using namespace cohft;

namespace {

std::string read(const std::string& name) {
  std::ifstream in(std::string(COHFT_CONFIG_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kTrivial = "dim: 1\neta: 1\nproduct 1 1: 1\nunit: 1\ndegree: 2\ncoherent: true\n";

template <class F>
ConfigError config_error(F&& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e;
  }
  ADD_FAILURE() << "no ConfigError";
  return ConfigError(0, "", "");
}

}  // namespace

TEST(Config, MinimalTrivialConfig) {
  CohFTSpec spec = parse_config(kTrivial);
  EXPECT_EQ(spec.dim(), 1u);
  EXPECT_EQ(spec.degree(), 2);
  EXPECT_EQ(spec.phi()[0], zero_vec(1));
  EXPECT_EQ(spec.R()[1], Matrix(1, 1));
}

TEST(Config, NonSymmetricEta) {
  ConfigError e = config_error([] { parse_config(read("bad_eta.cfg")); });
  EXPECT_NE(std::string(e.what()).find("eta not symmetric"), std::string::npos) << e.what();
}

TEST(Config, CoherentFlagWithBrokenCompatibility) {
  ConfigError e = config_error([] { parse_config(read("incoherent.cfg")); });
  EXPECT_EQ(e.field(), "phi");
  EXPECT_NE(std::string(e.what()).find("compatibility relation"), std::string::npos) << e.what();
  EXPECT_NO_THROW(parse_config(read("incoherent_unflagged.cfg")));
}

TEST(Config, NotSemisimple) {
  ConfigError e = config_error([] { parse_config(read("nilpotent.cfg")); });
  EXPECT_NE(std::string(e.what()).find("not semisimple"), std::string::npos) << e.what();
}

TEST(Config, LineAnchoredErrors) {
  ConfigError e = config_error([] { parse_config("dim: 1\neta: 1\nproduct 1 1: 0.5\n"); });
  EXPECT_EQ(e.line(), 3);
  EXPECT_EQ(e.field(), "product");
  e = config_error([] { parse_config("dim: 1\nbogus: 2\n"); });
  EXPECT_EQ(e.line(), 2);
  e = config_error([] { parse_config("dim: 1\neta: 1 | 2\n"); });
  EXPECT_EQ(e.line(), 2);
  e = config_error([] { parse_config("dim: 1\neta: 1\nunit: 1\ndegree: 1\ncoherent: true\n"); });
  EXPECT_EQ(e.field(), "product");
  e = config_error([] { parse_config(std::string(kTrivial) + "R 3: 1\n"); });
  EXPECT_EQ(e.field(), "R");
  e = config_error([] { parse_config(std::string(kTrivial) + "R 1: 1\n"); });
  EXPECT_EQ(e.field(), "R");  // R_1 = 1 alone is not symplectic: R_2 must be 1/2
}

TEST(Config, SerializationRoundTrip) {
  for (const char* name : {"trivial.cfg", "rank_one.cfg", "rank_two.cfg", "incoherent_unflagged.cfg"}) {
    std::string once = serialize_config(parse_config(read(name)));
    std::string twice = serialize_config(parse_config(once));
    EXPECT_EQ(once, twice) << name;
  }
}

TEST(Config, DerivedPhiMatchesRankOneExpansion) {
  CohFTSpec spec = parse_config(read("rank_one.cfg"));
  // log R^{-1}(z) 1 = -3z/2, so phi_1 = 3/2 and higher phi vanish
  EXPECT_EQ(spec.phi()[0][0], frac(3, 2));
  EXPECT_EQ(spec.phi()[1][0], 0);
  EXPECT_EQ(spec.phi()[2][0], 0);
}
