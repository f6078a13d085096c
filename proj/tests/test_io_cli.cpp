#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <unistd.h>

#include "latmech/catalogue.hpp"
#include "latmech/cli.hpp"
#include "latmech/fe_homog.hpp"
#include "latmech/io.hpp"
#include "support.hpp"

using namespace latmech;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("latmech_test_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

void write_catalogue(const std::string& path, const std::vector<Lattice>& lats) {
  std::ofstream f(path);
  io::write_lattices(f, lats);
}

}  // namespace

TEST_CASE("lattice records round trip") {
  auto lats = catalogue::reference_set();
  lats.push_back(perturb(catalogue::octet(), 0.07, 3));
  for (const auto& lat : lats) {
    const Lattice back = io::parse_lattice(io::to_json_line(lat));
    CHECK(back.name() == lat.name());
    CHECK(back.cell() == lat.cell());
    CHECK(back.nodes() == lat.nodes());
    CHECK(back.edges() == lat.edges());
    CHECK(back.radius() == lat.radius());
  }
}

TEST_CASE("stiffness records round trip bit for bit") {
  const CounterRng rng(3);
  for (std::uint64_t s = 0; s < 50; ++s) {
    io::StiffnessRecord rec{"r" + std::to_string(s), 0.01 * s, std::nullopt,
                            MandelMatrix(testing::random_symmetric(rng, s, 1e-3))};
    if (s % 2) rec.relative_density = rng.uniform(s);
    const std::string line = io::to_json_line(rec);
    const io::StiffnessRecord back = io::parse_stiffness(line);
    CHECK(back.mandel == rec.mandel);
    CHECK(back.relative_density == rec.relative_density);
    CHECK(io::to_json_line(back) == line);
  }
}

TEST_CASE("parser errors carry line numbers and reasons") {
  const std::string good = io::to_json_line(catalogue::bcc());
  auto expect_error = [&](const std::string& bad, const char* reason) {
    std::istringstream in("# comment\n" + good + "\n\n" + bad + "\n");
    try {
      io::read_lattices(in, "cat");
      FAIL("accepted: " << bad);
    } catch (const io::ParseError& e) {
      CHECK(e.line() == 4);
      CHECK(e.source() == "cat");
      CHECK_MESSAGE(e.reason().find(reason) != std::string::npos, e.reason());
    }
  };
  expect_error("{not json", "malformed");
  expect_error("[1,2]", "object");
  expect_error(R"({"name":"x","cell":[1,0,0,0,1,0,0,0],"nodes":[],"edges":[],"radius":0.1})", "9 numbers");
  expect_error(R"({"name":"x","cell":[1,0,0,0,1,0,0,0,1],"nodes":[0.5,0.5],"edges":[],"radius":0.1})",
               "multiple of 3");
  expect_error(R"({"name":"x","cell":[1,0,0,0,1,0,0,0,1],"nodes":[1.5,0.5,0.5],"edges":[],"radius":0.1})",
               "outside [0, 1)");
  expect_error(R"({"name":"x","cell":[1,0,0,0,1,0,0,0,1],"nodes":[0.5,0.5,0.5],"edges":[[0,1,0,0,0]],"radius":0.1})",
               "missing node");
  expect_error(R"({"name":"x","cell":[1,0,0,0,1,0,0,0,1],"nodes":[0.5,0.5,0.5],"edges":[[0,0,1.5,0,0]],"radius":0.1})",
               "non-integer");
  expect_error(R"({"name":"x","cell":[1,0,0,0,1,0,0,0,1],"nodes":[0.5,0.5,0.5],"edges":[]})", "radius");
  expect_error(R"({"name":"x","cell":[1,0,0,0,0,0,0,0,1],"nodes":[0.5,0.5,0.5],"edges":[],"radius":0.1})",
               "degenerate");

  std::istringstream rec(R"({"basis":"voigt","mandel":[]})");
  CHECK_THROWS_WITH_AS(io::read_stiffness(rec, "s"), doctest::Contains("s:1: unsupported basis"), io::ParseError);
  std::string asym = R"({"mandel":[0,1,0,0,0,0)";
  for (int k = 6; k < 36; ++k) asym += ",0";
  asym += "]}";
  CHECK_THROWS_WITH_AS(io::parse_stiffness(asym), doctest::Contains("not symmetric"), std::invalid_argument);
}

TEST_CASE("cli: usage errors") {
  CHECK(run({}).code == cli::kExitUsage);
  const Run bogus = run({"frobnicate"});
  CHECK(bogus.code == cli::kExitUsage);
  CHECK(bogus.err.find("Usage") != std::string::npos);
  CHECK(run({"homogenize"}).code == cli::kExitUsage);
  CHECK(run({"psd-project", "--in", "x", "--method", "cholesky"}).code == cli::kExitUsage);
  CHECK(run({"validate"}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitOk);
  CHECK(run({"validate", "--catalogue", "/nonexistent/file"}).code == cli::kExitDomain);
}

TEST_CASE("cli: validate and homogenize") {
  TempDir tmp;
  const std::string cat = tmp.file("cat.lats");
  write_catalogue(cat, catalogue::reference_set());

  const Run v = run({"validate", "--catalogue", cat});
  CHECK(v.code == 0);
  CHECK(v.out.find("7 lattices") != std::string::npos);

  const std::string out = tmp.file("stiff.jsonl");
  const Run h = run({"--threads", "2", "homogenize", "--catalogue", cat, "--radius", "0.03", "--radius", "0.05",
                     "--material", "E=2,nu=0.25", "--out", out});
  CHECK(h.code == 0);
  CHECK(h.out.empty());
  const auto recs = io::read_stiffness_file(out);
  REQUIRE(recs.size() == 14);
  CHECK(recs[1].name == "simple_cubic");
  CHECK(recs[1].radius == 0.05);
  CHECK(recs[1].mandel(0, 0) == doctest::Approx(2.0 * 3.141592653589793 * 0.0025));
  CHECK(run({"validate", "--records", out}).out.find("14 stiffness records, 0 not positive") != std::string::npos);

  const auto manifest = nlohmann::json::parse(slurp(out + ".manifest.json"));
  CHECK(manifest["command"] == "homogenize");
  CHECK(manifest["arguments"]["--radius"].size() == 2);
  CHECK(manifest["arguments"]["--threads"] == "2");
  CHECK(manifest.contains("started"));
  CHECK(manifest.contains("finished"));
  CHECK(manifest["tool_version"] == cli::version());

  // Reruns are bit-identical.
  const std::string again = tmp.file("again.jsonl");
  run({"homogenize", "--catalogue", cat, "--radius", "0.03", "--radius", "0.05", "--material", "E=2,nu=0.25",
       "--out", again});
  CHECK(slurp(again) == slurp(out));

  const std::string windowed = tmp.file("win.jsonl");
  CHECK(run({"homogenize", "--catalogue", cat, "--windowed", "--out", windowed}).code == 0);
  const auto fund = io::read_stiffness_file(out);
  const auto win = io::read_stiffness_file(windowed);
  CHECK(win.size() == 7);

  CHECK(run({"homogenize", "--catalogue", cat, "--material", "E=1,nu=0.7"}).code == cli::kExitDomain);
  CHECK(run({"homogenize", "--catalogue", cat, "--material", "G=1"}).code == cli::kExitUsage);
}

TEST_CASE("cli: homogenize reports a disconnected lattice") {
  TempDir tmp;
  const std::string cat = tmp.file("bad.lats");
  const Lattice split("split", Mat3::Identity(), {Vec3(0.1, 0.1, 0.1), Vec3(0.6, 0.6, 0.6)},
                      {{0, 0, Vec3i(1, 0, 0)}, {1, 1, Vec3i(0, 1, 0)}}, 0.05);
  write_catalogue(cat, {catalogue::bcc(), split});
  const Run h = run({"homogenize", "--catalogue", cat, "--out", tmp.file("o.jsonl")});
  CHECK(h.code == cli::kExitDomain);
  CHECK(h.err.find("split") != std::string::npos);
  CHECK(h.err.find("node 1") != std::string::npos);
  CHECK(io::read_stiffness_file(tmp.file("o.jsonl")).size() == 1);
}

TEST_CASE("cli: surface tables") {
  TempDir tmp;
  const std::string rec = tmp.file("iso.jsonl");
  write_file(rec, io::to_json_line(io::StiffnessRecord{"iso", std::nullopt, std::nullopt,
                                                       to_mandel(ElasticTensor4::isotropic(1.0, 1.0))}) + "\n");
  const Run s = run({"surface", "--record", rec, "-n", "20", "--seed", "4"});
  CHECK(s.code == 0);
  std::istringstream lines(s.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "# dx dy dz modulus");
  int rows = 0;
  while (std::getline(lines, line)) {
    std::istringstream row(line);
    double dx, dy, dz, v;
    row >> dx >> dy >> dz >> v;
    CHECK(v == doctest::Approx(3.0));
    ++rows;
  }
  CHECK(rows == 20);
  CHECK(run({"surface", "--record", rec, "-n", "20", "--seed", "4"}).out == s.out);

  const Run empty = run({"surface", "--record", rec, "-n", "0"});
  CHECK(empty.code == 0);
  CHECK(empty.out == "# dx dy dz modulus\n");

  write_file(tmp.file("bad.jsonl"), "{\"mandel\": [1, 2]}\n");
  CHECK(run({"surface", "--record", tmp.file("bad.jsonl")}).code == cli::kExitDomain);

  const std::string cat = tmp.file("sc.lats");
  write_catalogue(cat, {catalogue::simple_cubic()});
  const std::string out = tmp.file("sc.jsonl");
  CHECK(run({"homogenize", "--catalogue", cat, "--surface", "30", "--out", out}).code == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["surface"].size() == 30);
  CHECK(j["surface"][0].size() == 4);
}

TEST_CASE("cli: metrics, psd-project and rotate") {
  TempDir tmp;
  const std::string x = tmp.file("x.jsonl");
  {
    std::ofstream f(x);
    const CounterRng rng(5);
    for (std::uint64_t s = 0; s < 4; ++s)
      f << io::to_json_line(io::StiffnessRecord{"", std::nullopt, std::nullopt,
                                                MandelMatrix(testing::random_symmetric(rng, s))})
        << '\n';
  }
  const Run self = run({"metrics", "--pred", x, "--target", x});
  CHECK(self.code == 0);
  const auto report = nlohmann::json::parse(self.out);
  CHECK(report["l_comp"] == 0.0);
  CHECK(report["l_dir"] == 0.0);
  CHECK(report["l_train"] == 0.0);
  CHECK(report["count"] == 4);

  const std::string projected = tmp.file("p.jsonl");
  CHECK(run({"psd-project", "--in", x, "--method", "square", "--out", projected}).code == 0);
  CHECK(fs::exists(projected + ".manifest.json"));
  for (const auto& r : io::read_stiffness_file(projected)) CHECK(min_eigenvalue(r.tensor()) >= 0.0);
  const auto pr = nlohmann::json::parse(run({"metrics", "--pred", projected, "--target", x}).out);
  CHECK(pr["negative_eig_percent"] == 0.0);
  CHECK(pr["l_comp"] > 0.0);

  const std::string rotated = tmp.file("r.jsonl");
  CHECK(run({"rotate", "--records", projected, "--axis", "0,0,1", "--angle", "90", "--out", rotated}).code == 0);
  const auto a = io::read_stiffness_file(projected);
  const auto b = io::read_stiffness_file(rotated);
  const Mat6 expect = to_mandel(rotate(a[0].tensor(), (Mat3() << 0, -1, 0, 1, 0, 0, 0, 0, 1).finished())).matrix();
  CHECK(testing::relative(b[0].mandel.matrix(), expect) < 1e-12);
  CHECK(run({"rotate", "--records", x, "--catalogue", x}).code == cli::kExitUsage);
}

TEST_CASE("cli: perturb") {
  TempDir tmp;
  const std::string cat = tmp.file("cat.lats");
  write_catalogue(cat, {catalogue::bcc(), catalogue::octet()});
  const std::string a = tmp.file("a.lats"), b = tmp.file("b.lats");
  CHECK(run({"perturb", "--catalogue", cat, "--level", "0.1", "--seed", "9", "--realizations", "3", "--out", a}).code ==
        0);
  run({"perturb", "--catalogue", cat, "--level", "0.1", "--seed", "9", "--realizations", "3", "--out", b});
  CHECK(slurp(a) == slurp(b));
  const auto lats = io::read_lattices_file(a);
  CHECK(lats.size() == 6);
  CHECK(lats[4].name() == "octet/p1");
  const auto manifest = nlohmann::json::parse(slurp(a + ".manifest.json"));
  CHECK(manifest["seed"] == 9);
  CHECK(run({"perturb", "--catalogue", cat, "--level", "-1"}).code == cli::kExitUsage);

  // Single-node lattices cannot be perturbed; the rest are still written.
  write_catalogue(cat, {catalogue::simple_cubic(), catalogue::bcc()});
  const Run partial = run({"perturb", "--catalogue", cat, "--level", "0.1", "--out", a});
  CHECK(partial.code == cli::kExitDomain);
  CHECK(partial.err.find("simple_cubic") != std::string::npos);
  CHECK(io::read_lattices_file(a).size() == 1);
}

TEST_CASE("cli: optimize writes a trace") {
  TempDir tmp;
  const std::string cat = tmp.file("cat.lats");
  const Lattice start = catalogue::simple_cubic_midpoints();
  write_catalogue(cat, {catalogue::bcc(), start});
  Mat6 m = to_mandel(homogenize(start).stiffness).matrix();
  m.row(1) *= 0.9;
  m.col(1) *= 0.9;
  m(1, 1) /= 0.9;
  const std::string target = tmp.file("t.jsonl");
  write_file(target, io::to_json_line(io::StiffnessRecord{"t", std::nullopt, std::nullopt, MandelMatrix(m)}) + "\n");

  const std::string out = tmp.file("trace.json");
  const Run r = run({"optimize", "--catalogue", cat, "--name", "simple_cubic_midpoints", "--target", target, "--steps",
                     "3", "--kick", "0.005", "--seed", "7", "--out", out});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["objective_history"].size() == 4);
  CHECK(j["objective_history"][3] < j["objective_history"][0]);
  const Lattice final_lat = io::parse_lattice(j["final_lattice"].dump());
  const io::StiffnessRecord final_rec = io::parse_stiffness(j["final_stiffness"].dump());
  CHECK(final_rec.mandel == to_mandel(homogenize(final_lat).stiffness));
  CHECK(fs::exists(out + ".manifest.json"));

  CHECK(run({"optimize", "--catalogue", cat, "--name", "nope", "--target", target}).code == cli::kExitDomain);
}
