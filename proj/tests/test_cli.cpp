#include "decaf/io.hpp"

#include <doctest.h>
#include <filesystem>
#include <sys/wait.h>

namespace fs = std::filesystem;
using namespace decaf;

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "decaf_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

int run(const std::string& args, const std::string& out_name = "stdout.txt") {
  std::string cmd = std::string(DECAF_CLI) + " " + args + " > " + path(out_name) + " 2> " + path("stderr.txt");
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string output(const std::string& name = "stdout.txt") { return read_file(path(name)); }

void file(const std::string& name, const std::string& text) { write_file(path(name), text); }

}  // namespace

TEST_CASE("solve exit codes and output") {
  file("tri.ewcd", "ewcd 1 3 3\ne 0 1 2\ne 0 2 1\ne 1 2 1\n");
  CHECK(run("solve --input " + path("tri.ewcd") + " --k 2") == 0);
  SolutionFile s = parse_solution(output());
  CHECK(s.outcome == SolveOutcome::kYes);
  REQUIRE(s.cliques.size() == 2);
  CHECK(s.cliques[0].members == std::vector<VertexId>{0, 1, 2});
  CHECK(s.cliques[1].members == std::vector<VertexId>{0, 1});

  CHECK(run("solve --input " + path("tri.ewcd") + " --k 1") == 1);
  CHECK(parse_solution(output()).outcome == SolveOutcome::kNo);

  CHECK(run("solve --input " + path("tri.ewcd") + " --k 2 --kernel cricca --srules 0 --order push_back "
            "--symmetry-break --lp float --out " + path("sol.txt")) == 0);
  CHECK(run("verify --input " + path("tri.ewcd") + " --solution " + path("sol.txt")) == 0);
  CHECK(run("solve --input " + path("tri.ewcd") + " --k 2 --preset cricca-star") == 0);
}

TEST_CASE("K6 is solved on the original vertices") {
  std::string text = "ewcd 1 6 15\n";
  for (int u = 0; u < 6; ++u)
    for (int v = u + 1; v < 6; ++v) text += "e " + std::to_string(u) + " " + std::to_string(v) + " 2\n";
  file("k6.ewcd", text);
  CHECK(run("solve --input " + path("k6.ewcd") + " --k 3 --kernel decaf") == 0);
  SolutionFile s = parse_solution(output());
  REQUIRE(s.cliques.size() == 1);
  CHECK(s.cliques[0].members == std::vector<VertexId>{0, 1, 2, 3, 4, 5});
  CHECK(s.cliques[0].weight == 2);
  CHECK(run("kernelize --input " + path("k6.ewcd") + " --k 3 --trace " + path("k6.trace")) == 0);
  InstanceFile kernel = parse_instance(output());
  CHECK(kernel.graph.vertex_count() == 1);
  CHECK(kernel.annotations.at(0) == 2);
  CHECK(output("k6.trace").rfind("trace 1 6 1\n", 0) == 0);
}

TEST_CASE("usage and data errors") {
  CHECK(run("solve --k 2") == 64);
  CHECK(run("solve --input x --k 2 --bogus") == 64);
  CHECK(run("solve --input " + path("tri.ewcd") + " --k 2 --order sideways") == 64);
  CHECK(run("solve --input " + path("tri.ewcd") + " --k 2 --srules 3") == 64);
  CHECK(run("frobnicate") == 64);
  CHECK(run("solve --input " + path("missing.ewcd") + " --k 2") == 65);
  file("bad.ewcd", "ewcd 1 2 1\ne 0 0 1\n");
  CHECK(run("solve --input " + path("bad.ewcd") + " --k 2") == 65);
  CHECK(output("stderr.txt").find("line 2") != std::string::npos);
}

TEST_CASE("verify reports violations and mismatches") {
  file("tri.ewcd", "ewcd 1 3 3\ne 0 1 2\ne 0 2 1\ne 1 2 1\n");
  file("good.sol", "yes\nc 1 0 1 2\nc 1 0 1\n");
  file("perturbed.sol", "yes\nc 2 0 1 2\nc 1 0 1\n");
  file("mismatch.sol", "yes\nc 1 0 1 7\n");
  CHECK(run("verify --input " + path("tri.ewcd") + " --solution " + path("good.sol")) == 0);
  CHECK(run("verify --input " + path("tri.ewcd") + " --solution " + path("perturbed.sol")) == 1);
  CHECK(output().find("violation") != std::string::npos);
  CHECK(run("verify --input " + path("tri.ewcd") + " --solution " + path("mismatch.sol")) == 65);
}

TEST_CASE("generate, oracle and bench") {
  CHECK(run("generate --n 6 --k-true 1 --size-min 6 --size-max 6 --weight-min 2 --weight-max 2 --seed 4 "
            "--truth " + path("g.truth"), "g.ewcd") == 0);
  InstanceFile g = parse_instance(output("g.ewcd"));
  CHECK(g.graph.edge_count() == 15);
  CHECK(parse_truth(output("g.truth")).k_true == 1);
  CHECK(run("oracle --input " + path("g.ewcd") + " --min-k 3") == 0);
  CHECK(output() == "k 1\n");
  CHECK(run("oracle --input " + path("tri.ewcd") + " --k 1") == 1);

  std::string corpus = path("corpus");
  CHECK(run("generate --corpus-dir " + corpus + " --n 12 --size-min 2 --size-max 5 --k-values 2,3 "
            "--per-k 2 --kin-mult 1,0.5 --seed 8") == 0);
  CHECK(run("bench --corpus " + corpus + " --configs decaf,cricca,cricca-star,custom:none:012:keep_first:sym "
            "--timeout 10 --jobs 2 --out " + path("bench.csv")) == 0);
  auto records = parse_bench_csv(output("bench.csv"));
  CHECK(records.size() == 2 * 2 * 2 * 4);
  for (std::size_t i = 0; i + 1 < records.size(); i += 4) CHECK(records[i].n_kernel <= records[i + 1].n_kernel);
  CHECK(output().find("== k_true 2") != std::string::npos);
  CHECK(run("bench --corpus " + corpus + " --configs nonsense") == 64);
}

TEST_CASE("logging stays off stdout") {
  CHECK(run("solve --input " + path("tri.ewcd") + " --k 2 --out " + path("quiet.sol")) == 0);
  CHECK(output().empty());
  std::string cmd = "DECAF_LOG=debug " + std::string(DECAF_CLI) + " solve --input " + path("tri.ewcd") +
                    " --k 2 > " + path("logged.txt") + " 2> " + path("log.txt");
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  CHECK(output("logged.txt").rfind("yes\n", 0) == 0);
  CHECK(output("log.txt").find("[info]") != std::string::npos);
}
