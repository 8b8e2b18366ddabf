#include <doctest.h>

#include <string>

#include "tailsim/config.hpp"

using namespace tailsim;

namespace {

const std::string kMinimal =
    "marginal_x.family = \"exponential\"\n"
    "marginal_y.family = \"pareto\"\n"
    "marginal_y.alpha = 2.0\n"
    "counting.kind = \"poisson\"\n"
    "counting.lambda = 1.0\n"
    "treaty1.scheme = \"ecomor\"\n"
    "treaty1.p = 3\n"
    "treaty2.scheme = \"lcr\"\n"
    "treaty2.p = 2\n"
    "horizons = [100, 1000]\n"
    "replicates = 10\n";

std::string with_line(const std::string& extra) { return kMinimal + extra + "\n"; }

}  // namespace

TEST_CASE("minimal document and defaults") {
    auto cfg = parse_config(kMinimal);
    CHECK(cfg.treaty1.coeffs == std::vector<double>{1.0, 1.0, -2.0});
    CHECK(cfg.treaty1.c == 0.0);
    CHECK(cfg.treaty2.c == 2.0);
    CHECK(cfg.horizons == std::vector<double>{100.0, 1000.0});
    CHECK(cfg.replicates == 10);
    CHECK(cfg.limit_draws == 0);
    CHECK(cfg.seed == 0);
    CHECK(cfg.truncation_L == 100000);
    CHECK(cfg.out == "report.csv");
    CHECK(cfg.claims.dependence.asymptotically_independent());
}

TEST_CASE("optional keys are honored") {
    auto cfg = parse_config(with_line("seed = 42\nlimit_draws = 500\ntruncation_L = 1000\n"
                                      "out = \"run.csv\"\ndependence.kind = \"gaussian\"\n"
                                      "dependence.rho = 0.5  # comment"));
    CHECK(cfg.seed == 42);
    CHECK(cfg.limit_draws == 500);
    CHECK(cfg.truncation_L == 1000);
    CHECK(cfg.out == "run.csv");
}

TEST_CASE("explicit coefficient treaties") {
    std::string doc = kMinimal;
    doc.replace(doc.find("treaty1.scheme = \"ecomor\"\ntreaty1.p = 3\n"),
                std::string("treaty1.scheme = \"ecomor\"\ntreaty1.p = 3\n").size(),
                "treaty1.coeffs = [1, 0.5, 0.25]\n");
    auto cfg = parse_config(doc);
    CHECK(cfg.treaty1.coeffs == std::vector<double>{1.0, 0.5, 0.25});
    CHECK(cfg.treaty1.c == 1.75);
}

TEST_CASE("validation errors name the offending key") {
    using doctest::Contains;
    CHECK_THROWS_WITH_AS(
        (void)parse_config(with_line("replicates = 0").replace(kMinimal.find("replicates = 10"),
                                                               16, "")),
        Contains("replicates"), ConfigError);

    CHECK_THROWS_WITH_AS((void)parse_config(with_line("treaty1.coeffs = [1, 1]")),
                         Contains("treaty1"), ConfigError);

    CHECK_THROWS_WITH_AS((void)parse_config(with_line("mystery.key = 1")),
                         Contains("mystery.key"), ConfigError);

    CHECK_THROWS_WITH_AS((void)parse_config(with_line("horizons = [100, 50]")),
                         Contains("horizons"), ConfigError);

    CHECK_THROWS_WITH_AS((void)parse_config(with_line("truncation_L = 1")),
                         Contains("truncation_L"), ConfigError);
}

TEST_CASE("parse errors report the line number") {
    using doctest::Contains;
    CHECK_THROWS_WITH_AS((void)parse_config("a = 1\nthis line has no equals sign\n"),
                         Contains("line 2"), ConfigError);
    CHECK_THROWS_WITH_AS((void)parse_config("a = 1\n\nb = oops\n"), Contains("line 3"),
                         ConfigError);
    CHECK_THROWS_WITH_AS((void)parse_config("a = 1\na = 2\n"), Contains("duplicate"),
                         ConfigError);
    CHECK_THROWS_WITH_AS((void)parse_config("a = \"unterminated\n"), Contains("line 1"),
                         ConfigError);
}

TEST_CASE("missing required keys") {
    using doctest::Contains;
    std::string doc = kMinimal;
    doc.erase(doc.find("counting.kind = \"poisson\"\n"),
              std::string("counting.kind = \"poisson\"\n").size());
    CHECK_THROWS_WITH_AS((void)parse_config(doc), Contains("counting.kind"), ConfigError);
}
