#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "optuple/json_io.hpp"
#include "support.hpp"

using namespace optuple;
namespace fs = std::filesystem;

namespace {

struct Sandbox {
  fs::path dir;
  Sandbox() {
    dir = fs::temp_directory_path() /
          ("optuple-cli-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }

  fs::path file(const std::string& name) const { return dir / name; }
};

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const Sandbox& box, const std::string& args) {
  fs::path out = box.dir / "stdout.txt";
  std::string cmd = std::string(OPTUPLE_CLI_PATH) + " " + args + " > " +
                    out.string() + " 2> " + (box.dir / "stderr.txt").string();
  int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, ss.str()};
}

void write_tuple(const fs::path& path, const MatrixTuple& a) {
  save_json_file(path.string(), tuple_to_json(a));
}

MatrixTuple diag_tuple(std::initializer_list<double> values) {
  Matrix m = Matrix::Zero(values.size(), values.size());
  int i = 0;
  for (double v : values) m(i, i) = v, ++i;
  return MatrixTuple({m});
}

MatrixTuple j2_sum_scalar() {
  Matrix j2 = Matrix::Zero(2, 2);
  j2(1, 0) = 1.0;
  Matrix five(1, 1);
  five(0, 0) = 5.0;
  return direct_sum(MatrixTuple({j2}), MatrixTuple({five}));
}

std::string class_literal(const std::string& id, const std::string& kind, int dim,
                          const std::string& mult_json) {
  std::ostringstream os;
  os << R"({"labels":[{"id":")" << id << R"(","kind":")" << kind << R"(","dim":)";
  if (kind == "atom")
    os << dim;
  else
    os << R"("omega")";
  os << R"(,"mult":)" << mult_json << "}]}";
  return os.str();
}

}  // namespace

TEST_CASE("decompose") {
  Sandbox box;
  write_tuple(box.file("a.json"), diag_tuple({1, 1, 2}));
  auto r = run_cli(box, "decompose " + box.file("a.json").string());
  REQUIRE(r.exit_code == 0);
  Json report = Json::parse(r.out);
  CHECK(report["blocks"].size() == 2);

  // Byte-identical output for identical input and flags.
  auto again = run_cli(box, "decompose " + box.file("a.json").string());
  CHECK(again.out == r.out);

  write_tuple(box.file("zero.json"), MatrixTuple(2, 0));
  auto z = run_cli(box, "decompose " + box.file("zero.json").string());
  CHECK(z.exit_code == 0);
  CHECK(Json::parse(z.out)["blocks"].empty());
}

TEST_CASE("malformed input exits 2") {
  Sandbox box;
  {
    std::ofstream f(box.file("broken.json"));
    f << "{ not json";
  }
  CHECK(run_cli(box, "decompose " + box.file("broken.json").string()).exit_code == 2);

  {
    std::ofstream f(box.file("mismatch.json"));
    f << R"({"n":1,"dim":2,"matrices":[[[[1,0]],[[0,0]]]]})";
  }
  CHECK(run_cli(box, "decompose " + box.file("mismatch.json").string()).exit_code ==
        2);
  CHECK(run_cli(box, "decompose " + box.file("missing.json").string()).exit_code ==
        2);
}

TEST_CASE("equiv exit codes") {
  Sandbox box;
  write_tuple(box.file("a.json"), diag_tuple({1, 2}));
  write_tuple(box.file("b.json"), diag_tuple({2, 1}));
  write_tuple(box.file("c.json"), diag_tuple({1, 3}));
  std::string a = box.file("a.json").string();
  CHECK(run_cli(box, "equiv " + a + " " + a).exit_code == 0);
  CHECK(run_cli(box, "equiv " + a + " " + box.file("b.json").string()).exit_code == 0);
  CHECK(run_cli(box, "equiv " + a + " " + box.file("c.json").string()).exit_code == 1);
}

TEST_CASE("classify writes through the registry directory") {
  Sandbox box;
  write_tuple(box.file("a.json"), diag_tuple({1, 1, 2}));
  std::string registry = (box.dir / "registry").string();
  auto r = run_cli(box, "classify " + box.file("a.json").string() + " --registry " +
                            registry);
  REQUIRE(r.exit_code == 0);
  Json cls = Json::parse(r.out);
  CHECK(cls["labels"].size() == 2);
  CHECK(fs::exists(fs::path(registry) / "index.json"));

  // The registry resolves equivalent atoms to the same labels.
  write_tuple(box.file("b.json"), diag_tuple({2, 2, 1}));
  auto r2 = run_cli(box, "classify " + box.file("b.json").string() + " --registry " +
                             registry);
  REQUIRE(r2.exit_code == 0);
  Json cls2 = Json::parse(r2.out);
  std::set<std::string> ids;
  for (const auto& l : cls2["labels"]) ids.insert(l["id"].get<std::string>());
  std::set<std::string> ids1;
  for (const auto& l : cls["labels"]) ids1.insert(l["id"].get<std::string>());
  CHECK(ids == ids1);
}

TEST_CASE("btransform round trips through the CLI") {
  Sandbox box;
  std::mt19937_64 rng(3);
  MatrixTuple a = optuple::testing::random_tuple(2, 3, rng);
  write_tuple(box.file("a.json"), a);
  auto fwd = run_cli(box, "btransform " + box.file("a.json").string());
  REQUIRE(fwd.exit_code == 0);
  {
    std::ofstream f(box.file("s.json"));
    f << fwd.out;
  }
  auto back = run_cli(box, "btransform --inverse " + box.file("s.json").string());
  REQUIRE(back.exit_code == 0);
  MatrixTuple round = tuple_from_json(Json::parse(back.out));
  for (int j = 0; j < a.length(); ++j)
    CHECK((round[j] - a[j]).norm() < 1e-10 * (1.0 + a[j].norm()));

  // Norm-one input is outside the inverse domain: numerical exit code.
  write_tuple(box.file("u.json"), MatrixTuple({Matrix::Identity(2, 2)}));
  CHECK(run_cli(box, "btransform --inverse " + box.file("u.json").string())
            .exit_code == 3);
}

TEST_CASE("split emits part and complement files") {
  Sandbox box;
  write_tuple(box.file("a.json"), j2_sum_scalar());
  std::string prefix = (box.dir / "out").string();
  auto r = run_cli(box, "split " + box.file("a.json").string() +
                            " --ideal jointly-normal --out " + prefix);
  REQUIRE(r.exit_code == 0);
  MatrixTuple part = tuple_from_json(load_json_file(prefix + ".part.json"));
  MatrixTuple comp = tuple_from_json(load_json_file(prefix + ".complement.json"));
  CHECK(part.dim() == 1);
  CHECK(comp.dim() == 2);
  Matrix proj = matrix_from_json(load_json_file(prefix + ".part.projection.json"));
  CHECK((proj * proj - proj).norm() < 1e-9);
}

TEST_CASE("class-op subcommands") {
  Sandbox box;
  {
    std::ofstream f(box.file("p2.json"));
    f << class_literal("P", "atom", 1, R"({"type":"rational","num":2,"den":1})");
  }
  {
    std::ofstream f(box.file("p1.json"));
    f << class_literal("P", "atom", 1, R"({"type":"rational","num":1,"den":1})");
  }
  auto r = run_cli(box, "class-op oplus " + box.file("p2.json").string() + " " +
                            box.file("p1.json").string());
  REQUIRE(r.exit_code == 0);
  Json sum = Json::parse(r.out);
  CHECK(sum["labels"][0]["mult"]["num"] == 3);

  auto ratio = run_cli(box, "class-op ratio " + box.file("p2.json").string() + " " +
                                box.file("p1.json").string());
  REQUIRE(ratio.exit_code == 0);
  CHECK(Json::parse(ratio.out)["num"] == 2);

  auto dim = run_cli(box, "class-op dim " + box.file("p2.json").string());
  CHECK(Json::parse(dim.out)["num"] == 2);

  auto flags = run_cli(box, "class-op flags " + box.file("p1.json").string());
  REQUIRE(flags.exit_code == 0);
  bool has_atom = false;
  for (const auto& f : Json::parse(flags.out))
    if (f == "atom") has_atom = true;
  CHECK(has_atom);

  auto scaled = run_cli(box, "class-op scalar-mul aleph0 " +
                                 box.file("p2.json").string());
  REQUIRE(scaled.exit_code == 0);
  CHECK(Json::parse(scaled.out)["labels"][0]["mult"]["type"] == "aleph");

  // Admissibility violations in class files exit 4.
  {
    std::ofstream f(box.file("bad.json"));
    f << class_literal("F", "fractal", PrimeLabel::kOmega,
                       R"({"type":"rational","num":2,"den":1})");
  }
  CHECK(run_cli(box, "class-op dim " + box.file("bad.json").string()).exit_code == 4);
  CHECK(run_cli(box, "class-op scalar-mul 1/2 " + box.file("p2.json").string())
            .exit_code == 4);
  CHECK(run_cli(box, "class-op bogus " + box.file("p2.json").string()).exit_code ==
        2);
}

TEST_CASE("partition and minus operations through the CLI") {
  Sandbox box;
  {
    std::ofstream f(box.file("s.json"));
    f << class_literal("S", "semiprime-ii1", PrimeLabel::kOmega,
                       R"({"type":"rational","num":3,"den":2})");
  }
  auto r = run_cli(box, "class-op partition " + box.file("s.json").string());
  REQUIRE(r.exit_code == 0);
  Json part = Json::parse(r.out);
  CHECK(part["sm"]["labels"].size() == 1);
  CHECK(part["parts"].empty());

  {
    std::ofstream f(box.file("b.json"));
    f << class_literal("P", "atom", 1, R"({"type":"aleph","index":0})");
  }
  auto delta = run_cli(box, "class-op minus-delta " + box.file("b.json").string() +
                                " " + box.file("b.json").string());
  REQUIRE(delta.exit_code == 0);
  CHECK(Json::parse(delta.out)["labels"].empty());
  auto nabla = run_cli(box, "class-op minus-nabla " + box.file("b.json").string() +
                                " " + box.file("b.json").string());
  REQUIRE(nabla.exit_code == 0);
  CHECK(Json::parse(nabla.out)["labels"].size() == 1);
}

TEST_CASE("laws subcommand") {
  Sandbox box;
  auto r = run_cli(box, "laws --registry-size 1");
  CHECK(r.exit_code == 0);
  Json report = Json::parse(r.out);
  CHECK(report["passed"] == true);
}
