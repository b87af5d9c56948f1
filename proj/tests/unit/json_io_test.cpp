#include <doctest.h>

#include <limits>
#include <string>

#include "generators.hpp"
#include "vlex/constructions.hpp"
#include "vlex/errors.hpp"
#include "vlex/json_io.hpp"
#include "vlex/rng.hpp"

using namespace vlex;

TEST_CASE("double encoding carries infinities as strings") {
  CHECK(encode_double(kInf) == "inf");
  CHECK(encode_double(-kInf) == "-inf");
  CHECK(encode_double(2.5) == 2.5);
  CHECK(decode_double("inf", "x") == kInf);
  CHECK(decode_double("-inf", "x") == -kInf);
  CHECK(decode_double(nlohmann::json(0.1), "x") == 0.1);
  CHECK_THROWS_AS(encode_double(std::numeric_limits<double>::quiet_NaN()),
                  Error);
  CHECK_THROWS_AS(decode_double("infinity", "x"), Error);
  CHECK_THROWS_AS(decode_double(nlohmann::json::array(), "x"), Error);
}

TEST_CASE("float rendering uses 17 significant digits") {
  CHECK(dump_json(nlohmann::json(0.1)) == "0.10000000000000001\n");
  CHECK(dump_json(nlohmann::json(2.0)) == "2.0\n");
  // 1e300 is not exactly representable; %.17g shows the stored neighbour.
  CHECK(dump_json(nlohmann::json(1e300)) == "1.0000000000000001e+300\n");
  CHECK(dump_json(nlohmann::json(-0.5)) == "-0.5\n");
  CHECK(dump_json(nlohmann::json(3)) == "3\n");  // integers stay integral
  CHECK(dump_json(nlohmann::json("inf")) == "\"inf\"\n");
}

TEST_CASE("space descriptions round-trip byte-identically") {
  Rng rng(0x10ULL);
  for (int i = 0; i < 60; ++i) {
    Rng child = rng.split(i);
    ExponentSpec spec = testgen::any_spec(child);
    nlohmann::json j = spec_to_json(spec);
    std::string once = dump_json(j);
    ExponentSpec back = spec_from_json(j);
    std::string twice = dump_json(spec_to_json(back));
    CAPTURE(i);
    CHECK(once == twice);
  }
}

TEST_CASE("descriptions with every sequence kind survive the round trip") {
  ExponentSpec spec;
  spec.regions.push_back(Region{"a", RegionKind::Atom, 0.1, 1.0});
  spec.regions.push_back(Region{"I", RegionKind::Cell, 2.0, kInf});
  auto fam = [&](std::string id, WeightSeq w, ExponentSeq e, Count c) {
    RegionFamily f;
    f.id = std::move(id);
    f.weights = std::move(w);
    f.exponents = std::move(e);
    f.count = c;
    spec.families.push_back(std::move(f));
  };
  fam("f1", WeightSeq::constant(1.0), ExponentSeq::harmonic_approach(1.0, 2.0),
      Count::inf());
  fam("f2", WeightSeq::geometric(2.0, 0.5),
      ExponentSeq::geometric_approach(0.5, 0.25), Count::inf());
  fam("f3", WeightSeq::prefix_constant({0.1, 0.2}, 1.0),
      ExponentSeq::power_growth(1.5, 1.0), Count::inf());
  fam("f4", WeightSeq::constant(3.0),
      ExponentSeq::prefix_constant({1.0, kInf}, 2.0), Count::finite(7));

  ExponentSpec back = spec_from_json(spec_to_json(spec));
  CHECK(dump_json(spec_to_json(back)) == dump_json(spec_to_json(spec)));
  CHECK(back.families[3].count == Count::finite(7));
  CHECK(back.families[1].weights.ratio == 0.5);
  CHECK(back.families[3].exponents.prefix[1] == kInf);
  CHECK(back.regions[1].exponent == kInf);
}

TEST_CASE("spec parsing rejects malformed documents") {
  nlohmann::json good = spec_to_json([] {
    ExponentSpec s;
    s.regions.push_back(Region{"a", RegionKind::Atom, 1.0, 2.0});
    return s;
  }());
  CHECK_NOTHROW(spec_from_json(good));

  SUBCASE("unknown keys anywhere") {
    nlohmann::json j = good;
    j["extra"] = 1;
    CHECK_THROWS_AS(spec_from_json(j), Error);
    j = good;
    j["regions"][0]["color"] = "red";
    CHECK_THROWS_AS(spec_from_json(j), Error);
  }
  SUBCASE("missing fields") {
    nlohmann::json j = good;
    j["regions"][0].erase("exponent");
    CHECK_THROWS_AS(spec_from_json(j), Error);
  }
  SUBCASE("bad kind tags") {
    nlohmann::json j = good;
    j["regions"][0]["kind"] = "blob";
    CHECK_THROWS_AS(spec_from_json(j), Error);
  }
  SUBCASE("validation still runs after parsing") {
    nlohmann::json j = good;
    j["regions"][0]["weight"] = -1.0;
    CHECK_THROWS_AS(spec_from_json(j), Error);
  }
  SUBCASE("wrong top-level shape") {
    CHECK_THROWS_AS(spec_from_json(nlohmann::json::array()), Error);
  }
}

TEST_CASE("functions round-trip with family indices") {
  SimpleFunction f = SimpleFunction::make({
      Term{{"a", {}}, -1.5},
      Term{{"fam", 3}, 0.25},
      Term{{"fam", 11}, 2.0},
  });
  nlohmann::json j = function_to_json(f);
  SimpleFunction back = function_from_json(j);
  CHECK(dump_json(function_to_json(back)) == dump_json(j));
  REQUIRE(back.terms().size() == 3);
  CHECK(back.terms()[1].ref.index == 3);

  CHECK_THROWS_AS(function_from_json(nlohmann::json{{"terms", 5}}), Error);
  nlohmann::json bad = j;
  bad["terms"][0]["wing"] = 1;
  CHECK_THROWS_AS(function_from_json(bad), Error);
}

TEST_CASE("basis families round-trip through JSON") {
  ExponentSpec growth;
  {
    RegionFamily fam;
    fam.id = "g";
    fam.weights = WeightSeq::geometric(1.0, 0.5);
    fam.exponents = ExponentSeq::power_growth(1.0, 2.0);
    fam.count = Count::inf();
    growth.families.push_back(fam);
  }
  BasisFamily linfty = build_linfty_copy(growth, 2, 8);
  nlohmann::json j = basis_family_to_json(linfty);
  BasisFamily back = basis_family_from_json(j);
  CHECK(dump_json(basis_family_to_json(back)) == dump_json(j));
  CHECK(back.tag == "linfty_copy");
  CHECK(back.n_count == 2);
  CHECK(back.j_count == 8);
  CHECK(back.thresholds == linfty.thresholds);
  CHECK(back.exact_modulars == linfty.exact_modulars);
  CHECK(back.prime_powers == linfty.prime_powers);
  REQUIRE(back.vectors.size() == 2);
  CHECK(back.vectors[0].terms().size() == 8);
  CHECK(back.vectors[0].terms()[0].value == linfty.vectors[0].terms()[0].value);
  CHECK(back.support[0].refs == linfty.support[0].refs);

  BasisFamily nak = nakano_basis(ExponentSeq::harmonic_approach(1.0, 1.0), 6);
  BasisFamily nak_back = basis_family_from_json(basis_family_to_json(nak));
  CHECK(nak_back.band_edges == nak.band_edges);
  CHECK(dump_json(basis_family_to_json(nak_back)) ==
        dump_json(basis_family_to_json(nak)));
}

TEST_CASE("report serializers keep deterministic key order") {
  ExponentSpec spec;
  spec.regions.push_back(Region{"a", RegionKind::Atom, 1.0, 1.0});
  spec.regions.push_back(Region{"b", RegionKind::Atom, 1.0, 2.0});
  SimpleFunction f = SimpleFunction::make({Term{{"a", {}}, 1.0},
                                           Term{{"b", {}}, 1.0}});

  nlohmann::json n1 = norm_result_to_json(luxemburg_norm(spec, f));
  nlohmann::json n2 = norm_result_to_json(luxemburg_norm(spec, f));
  CHECK(dump_json(n1) == dump_json(n2));
  CHECK(n1.contains("norm"));
  CHECK(n1.contains("bracket"));
  CHECK(n1["boundary"] == "interior");

  nlohmann::json c = classification_to_json(classify(spec));
  CHECK(c.contains("scalars"));
  CHECK(c.contains("predicates"));
  CHECK(c.contains("witnesses"));
  CHECK(c["predicates"]["delta2"] == true);
  // infinities inside scalars render as strings
  ExponentSpec with_inf = spec;
  with_inf.regions.push_back(Region{"c", RegionKind::Atom, 1.0, kInf});
  std::string text = dump_json(classification_to_json(classify(with_inf)));
  CHECK(text.find("\"inf\"") != std::string::npos);
}

TEST_CASE("file io reports missing files and parse diagnostics") {
  try {
    load_json_file("/nonexistent/file.json");
    FAIL("expected an io error");
  } catch (const Error& e) {
    CHECK(e.kind() == Error::Kind::Io);
  }

  std::string path = "/tmp/vlex_json_io_test_broken.json";
  write_text_file(path, "{ not json");
  try {
    load_json_file(path);
    FAIL("expected an io error");
  } catch (const Error& e) {
    CHECK(e.kind() == Error::Kind::Io);
    CHECK(std::string(e.what()).find("parse") != std::string::npos);
  }

  write_text_file(path, "{\"k\": 1}\n");
  nlohmann::json j = load_json_file(path);
  CHECK(j["k"] == 1);
}
