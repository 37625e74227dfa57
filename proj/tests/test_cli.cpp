// End-to-end CLI contract: exit codes, CSV shape and determinism, manifest
// round-tripping. Drives the installed binary through std::system.
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#ifndef COMP_SIM_BINARY
#error "COMP_SIM_BINARY must name the CLI executable"
#endif

namespace fs = std::filesystem;

namespace {

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("comp_cli_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args, std::string* out = nullptr) {
  const fs::path log = work_dir() / "last_output.txt";
  const std::string cmd = std::string(COMP_SIM_BINARY) + " " + args + " > " +
                          log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (out) {
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    *out = ss.str();
  }
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

fs::path write_file(const std::string& name, const std::string& body) {
  const fs::path p = work_dir() / name;
  std::ofstream(p) << body;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

const char* kEdgeCurve =
    "# symmetric cell-edge drop\n"
    "d1 = 0.5\n"
    "d2 = 0.5\n"
    "n_pilots = 2\n"
    "quantizer = sc\n"
    "schemes = nocoop,mac,dasc\n"
    "beta_grid = 0:6:12\n";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("curve run: header, ordering, formatting, manifest") {
  const fs::path cfg = write_file("edge.scn", kEdgeCurve);
  const fs::path csv = work_dir() / "edge.csv";
  CHECK(run("curve --config " + cfg.string() + " --out " + csv.string()) ==
        0);

  const auto ls = lines_of(slurp(csv));
  REQUIRE(ls.size() == 1 + 3 * 3);  // header + 3 schemes x 3 budgets
  CHECK(ls[0] == "beta,scheme,quantizer,sum_rate,r1,r2");

  // Scheme-major rows in the requested order, beta ascending inside.
  CHECK(ls[1].rfind("0,nocoop,sc,", 0) == 0);
  CHECK(ls[3].rfind("12,nocoop,sc,", 0) == 0);
  CHECK(ls[4].rfind("0,mac,sc,", 0) == 0);
  CHECK(ls[7].rfind("0,dasc,sc,", 0) == 0);
  CHECK(ls[9].rfind("12,dasc,sc,", 0) == 0);

  // Nine significant digits.
  CHECK(ls[1].find("4.88251737") != std::string::npos);
  CHECK(ls[4].find("6.97160351") != std::string::npos);

  // Manifest captures the resolved run next to the CSV.
  const fs::path man = work_dir() / "edge.manifest.json";
  REQUIRE(fs::exists(man));
  const auto j = nlohmann::json::parse(slurp(man));
  CHECK(j.at("command") == "curve");
  CHECK(j.at("run").at("quantizer") == "sc");
  CHECK(j.at("run").at("beta_grid") == "0:6:12");
  CHECK(j.at("run").at("seed").get<uint64_t>() == 12345);
  CHECK(j.at("resolved").contains("mac_ceiling"));
  CHECK(j.contains("versions"));

  SUBCASE("rerun is byte-identical") {
    const fs::path csv2 = work_dir() / "edge2.csv";
    CHECK(run("curve --config " + cfg.string() + " --out " + csv2.string()) ==
          0);
    CHECK(slurp(csv2) == slurp(csv));
  }

  SUBCASE("manifest round-trips as a config") {
    const fs::path csv3 = work_dir() / "edge3.csv";
    CHECK(run("curve --config " + man.string() + " --out " + csv3.string()) ==
          0);
    CHECK(slurp(csv3) == slurp(csv));
  }

  SUBCASE("flag overrides are reflected in output and manifest") {
    const fs::path csv4 = work_dir() / "edge4.csv";
    CHECK(run("curve --config " + cfg.string() + " --quantizer rd --out " +
              csv4.string()) == 0);
    const auto j4 =
        nlohmann::json::parse(slurp(work_dir() / "edge4.manifest.json"));
    CHECK(j4.at("run").at("quantizer") == "rd");
    CHECK(slurp(csv4) != slurp(csv));
  }
}

TEST_CASE("scenario grammar failures exit 2 with a line number") {
  std::string err;

  SUBCASE("unknown key") {
    const fs::path p = write_file(
        "bad_key.scn", "d1 = 0.5\nd2 = 0.5\nwat = 1\n");
    CHECK(run("curve --config " + p.string(), &err) == 2);
    CHECK(err.find("wat") != std::string::npos);
    CHECK(err.find("line 3") != std::string::npos);
  }
  SUBCASE("missing equals sign") {
    const fs::path p = write_file("bad_eq.scn", "d1 0.5\n");
    CHECK(run("curve --config " + p.string(), &err) == 2);
    CHECK(err.find("line 1") != std::string::npos);
  }
  SUBCASE("bad quantizer value") {
    const fs::path p = write_file("bad_q.scn", "d1 = 0.5\nquantizer = vq\n");
    CHECK(run("curve --config " + p.string(), &err) == 2);
    CHECK(err.find("line 2") != std::string::npos);
  }
  SUBCASE("bad number") {
    const fs::path p = write_file("bad_num.scn", "d1 = abc\n");
    CHECK(run("curve --config " + p.string(), &err) == 2);
    CHECK(err.find("line 1") != std::string::npos);
  }
  SUBCASE("missing file is a precondition failure, not a parse error") {
    CHECK(run("curve --config " + (work_dir() / "nope.scn").string(), &err) ==
          3);
    CHECK(err.find("nope.scn") != std::string::npos);
  }
}

TEST_CASE("infeasible configurations exit 3 with the named precondition") {
  const fs::path cfg = write_file("ok.scn", kEdgeCurve);
  std::string err;

  SUBCASE("empty scheme set") {
    CHECK(run("curve --config " + cfg.string() + " --schemes '' --out " +
                  (work_dir() / "x.csv").string(),
              &err) == 3);
    CHECK(err.find("scheme") != std::string::npos);
  }
  SUBCASE("malformed beta grid") {
    CHECK(run("curve --config " + cfg.string() + " --beta-grid 5:1:4 --out " +
                  (work_dir() / "x.csv").string(),
              &err) == 3);
  }
  SUBCASE("power grid too coarse") {
    CHECK(run("curve --config " + cfg.string() +
                  " --power-steps 1 --out " + (work_dir() / "x.csv").string(),
              &err) == 3);
    CHECK(err.find("power_steps") != std::string::npos);
  }
  SUBCASE("fading study needs the three-cell model") {
    CHECK(run("montecarlo --config " + cfg.string() + " --out " +
                  (work_dir() / "x.csv").string(),
              &err) == 3);
  }
  SUBCASE("central-processor scheme unavailable on two cells") {
    const fs::path p = write_file(
        "dasn2.scn", std::string(kEdgeCurve) + "schemes = dasn\n");
    CHECK(run("curve --config " + p.string() + " --out " +
                  (work_dir() / "x.csv").string(),
              &err) == 3);
  }
}

TEST_CASE("argument handling") {
  std::string err;
  SUBCASE("missing required config flag") {
    CHECK(run("curve", &err) == 2);
  }
  SUBCASE("unknown subcommand") {
    CHECK(run("frobnicate", &err) == 2);
  }
  SUBCASE("bad quantizer flag value") {
    const fs::path cfg = write_file("ok2.scn", kEdgeCurve);
    CHECK(run("curve --config " + cfg.string() + " --quantizer vq", &err) ==
          2);
  }
  SUBCASE("help exits zero") {
    CHECK(run("--help", &err) == 0);
    CHECK(err.find("curve") != std::string::npos);
  }
}

TEST_CASE("map run emits the winner grid") {
  const fs::path cfg = write_file(
      "map.scn",
      "d1 = 0.5\nd2 = 0.5\nbeta = 4\nd_grid = 0.4:0.1:0.5\n"
      "quantizer = rd\n");
  const fs::path csv = work_dir() / "map.csv";
  CHECK(run("map --config " + cfg.string() + " --threads 2 --out " +
            csv.string()) == 0);
  const auto ls = lines_of(slurp(csv));
  REQUIRE(ls.size() == 1 + 4);
  CHECK(ls[0] == "d1,d2,winner,flag,sum_dis,sum_cif,sum_dasd,sum_dasc");
  CHECK(ls[1].rfind("0.4,0.4,", 0) == 0);
  CHECK(ls[4].rfind("0.5,0.5,dasc,", 0) == 0);

  // Thread count must not change the bytes.
  const fs::path csv1 = work_dir() / "map1.csv";
  CHECK(run("map --config " + cfg.string() + " --threads 1 --out " +
            csv1.string()) == 0);
  CHECK(slurp(csv1) == slurp(csv));
}

TEST_CASE("montecarlo run is reproducible and thread invariant") {
  const fs::path cfg = write_file(
      "mc.scn",
      "model = cells3\nd = 0.5\ntrials = 2\nseed = 7\n"
      "quantizer = practical\nbeta_grid = 0:6:6\n");
  const fs::path a = work_dir() / "mc_a.csv";
  const fs::path b = work_dir() / "mc_b.csv";
  CHECK(run("montecarlo --config " + cfg.string() + " --out " + a.string()) ==
        0);
  CHECK(run("montecarlo --config " + cfg.string() + " --threads 2 --out " +
            b.string()) == 0);
  CHECK(slurp(a) == slurp(b));

  const auto ls = lines_of(slurp(a));
  REQUIRE(ls.size() == 1 + 10 * 2);  // ten strategies, two budgets
  CHECK(ls[0] == "beta,scheme,quantizer,sum_rate,r1,r2,r3");
  CHECK(ls[1].rfind("0,mrc,practical,", 0) == 0);
  // Per-UE splits are not defined for averaged strategies.
  CHECK(ls[1].substr(ls[1].size() - 3) == ",,,");

  const auto j =
      nlohmann::json::parse(slurp(work_dir() / "mc_a.manifest.json"));
  CHECK(j.at("resolved").contains("efficiency"));
  CHECK(j.at("resolved").at("ci_half").contains("hybrid"));
}

TEST_CASE("gains run in cooperation mode tabulates the pilot sweep") {
  const fs::path cfg = write_file(
      "gains.scn",
      "gains_mode = cooperation\nd_values = 0.5:0.1:0.5\npilot_grid = 2,0\n");
  const fs::path csv = work_dir() / "gains.csv";
  CHECK(run("gains --config " + cfg.string() + " --out " + csv.string()) ==
        0);
  const auto ls = lines_of(slurp(csv));
  REQUIRE(ls.size() == 1 + 2);
  CHECK(ls[0] == "n_pilots,d,nocoop,mac,gain_pct");

  // gain_pct column is consistent with the two rates on the same row.
  const auto fields = [](const std::string& s) {
    std::vector<std::string> f;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) f.push_back(tok);
    return f;
  };
  for (size_t i = 1; i < ls.size(); ++i) {
    const auto f = fields(ls[i]);
    REQUIRE(f.size() == 5);
    const double nc = std::stod(f[2]), mac = std::stod(f[3]),
                 gain = std::stod(f[4]);
    CHECK(gain == doctest::Approx(100.0 * (mac / nc - 1.0)).epsilon(1e-6));
  }
}

TEST_CASE("region run emits the weighted extreme points") {
  const fs::path cfg = write_file(
      "region.scn",
      "model = direct2x2\nn_bs_antennas = 1\n"
      "g11 = 1\ng12 = 0.25\ng21 = 0.5\ng22 = 1\n"
      "weight_steps = 5\nbeta_grid = 0:6:12\nschemes = nocoop,mac,dis\n");
  const fs::path csv = work_dir() / "region.csv";
  CHECK(run("region --config " + cfg.string() + " --out " + csv.string()) ==
        0);
  const auto ls = lines_of(slurp(csv));
  CHECK(ls[0] == "beta,scheme,quantizer,sum_rate,r1,r2");
  REQUIRE(ls.size() > 3);

  const auto j =
      nlohmann::json::parse(slurp(work_dir() / "region.manifest.json"));
  CHECK(j.at("resolved").contains("weights"));
}

}  // TEST_SUITE
