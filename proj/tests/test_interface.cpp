#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include <braidrep/interface.hpp>

using namespace braidrep;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args)
{
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Result& r) { return nlohmann::json::parse(r.out); }

class TempDir {
public:
  TempDir()
  {
    path_ = std::filesystem::temp_directory_path() / ("braidrep_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const
  {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

private:
  std::filesystem::path path_;
};

} // namespace

TEST(Cli, ConstructPsi)
{
  const auto r = run_cli({"construct", "--psi", "--m", "3", "--k", "7", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(braid_rep_from_json(json_of(r)), psi(3, 7));
  const auto human = run_cli({"construct", "--psi", "--m", "3", "--k", "7"});
  EXPECT_NE(human.out.find("s1 = (1,4,2,5,3,6)"), std::string::npos);
}

TEST(Cli, ConstructOtherModels)
{
  EXPECT_EQ(braid_rep_from_json(json_of(run_cli({"construct", "--mu", "--k", "5", "--json"}))), canonical_mu(5));
  EXPECT_EQ(braid_rep_from_json(json_of(run_cli({"construct", "--lin", "3", "--k", "6", "--json"}))), lin_model(3, 6));
  const auto r = run_cli({"construct", "--phi", "--model", R"({"m":3,"l":1,"k":4,"t":[[1,0],[0,1],[1,0]]})", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(braid_rep_from_json(json_of(r)), phi(ModelParams{3, 1, 4, {{1, 0}, {0, 1}, {1, 0}}}));

  const auto bad = run_cli({"construct", "--phi", "--model", R"({"m":3,"l":1,"k":4,"t":[[1,0],[0,0],[0,0]]})"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("i=1"), std::string::npos);
  EXPECT_EQ(run_cli({"construct", "--psi", "--mu", "--k", "4"}).code, 2);
  EXPECT_EQ(run_cli({"construct", "--k", "4"}).code, 2);
  EXPECT_EQ(run_cli({"construct", "--phi"}).code, 2);
}

TEST(Cli, VerifyExitCodes)
{
  TempDir dir;
  auto gens = canonical_mu(5).gens();
  std::swap(gens[1], gens[3]);
  const auto bad = dir.write("bad.json", nlohmann::json(BraidRep(5, gens)).dump());
  const auto r = run_cli({"verify", "--rep", bad, "--json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(json_of(r)["homomorphism"].get<bool>());
  EXPECT_FALSE(json_of(r)["failures"].empty());

  const auto good = dir.write("good.json", nlohmann::json(psi(2, 5)).dump());
  EXPECT_EQ(run_cli({"verify", "--rep", good}).code, 0);
  EXPECT_EQ(run_cli({"verify", "--rep", nlohmann::json(psi(2, 5)).dump()}).code, 0);
}

TEST(Cli, UsageAndInputErrors)
{
  const auto unknown = run_cli({"frobnicate"});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_NE(unknown.err.find("frobnicate"), std::string::npos);
  const auto flag = run_cli({"construct", "--psi", "--bogus"});
  EXPECT_EQ(flag.code, 2);
  EXPECT_NE(flag.err.find("--bogus"), std::string::npos);
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--rep", "/nonexistent/file.json"}).code, 2);
  const auto syntax = run_cli({"verify", "--rep", "{\"strands\": 3, oops}"});
  EXPECT_EQ(syntax.code, 2);
  EXPECT_NE(syntax.err.find("invalid JSON"), std::string::npos);
  const auto extra = run_cli({"verify", "--rep", R"({"strands":2,"degree":2,"generators":[[[1,2]]],"colour":1})"});
  EXPECT_EQ(extra.code, 2);
  EXPECT_NE(extra.err.find("colour"), std::string::npos);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, AnalyzeReport)
{
  const auto r = run_cli({"analyze", "--rep", nlohmann::json(psi(3, 7)).dump(), "--json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "{\"cycle_type_gen1\":[6],\"cyclic\":false,\"goodness\":\"type1\",\"intersect\":3,\"supp\":6,"
            "\"transitive\":true}\n");
}

TEST(Cli, NormalizeExample)
{
  const std::string model = R"({"m":3,"l":1,"k":7,"t":[[1,1],[1,1],[1,1],[1,1],[1,1],[1,1]]})";
  const auto r = run_cli({"normalize", "--model", model, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto nf = json_of(r).get<NormalForm>();
  EXPECT_EQ(nf.p, 2u);
  EXPECT_EQ(conjugate(phi(nlohmann::json::parse(model).get<ModelParams>()), nf.conjugator), phi(nf.canonical()));
}

TEST(Cli, ConjugateSubcommand)
{
  const auto yes = run_cli({"conjugate", "--a", nlohmann::json(lin_model(1, 5)).dump(), "--b",
                            nlohmann::json(psi(2, 5)).dump(), "--json"});
  ASSERT_EQ(yes.code, 0) << yes.err;
  const auto j = json_of(yes);
  EXPECT_TRUE(j["conjugate"].get<bool>());
  const auto theta = Permutation::from_cycles(10, j["conjugator"].get<std::vector<Cycle>>());
  EXPECT_EQ(conjugate(lin_model(1, 5), theta), psi(2, 5));

  const auto no = run_cli({"conjugate", "--a", nlohmann::json(lin_model(2, 5)).dump(), "--b",
                           nlohmann::json(lin_model(3, 5)).dump(), "--json"});
  EXPECT_EQ(no.code, 1);
  EXPECT_TRUE(json_of(no)["conjugator"].is_null());
  EXPECT_EQ(run_cli({"conjugate", "--a", nlohmann::json(psi(2, 5)).dump(), "--b", nlohmann::json(psi(2, 4)).dump()})
              .code,
            2);
}

TEST(Cli, DeriveBothPaths)
{
  const auto young = run_cli({"derive", "--young2", "--k", "5", "--json"});
  ASSERT_EQ(young.code, 0) << young.err;
  const auto rep = braid_rep_from_json(json_of(young));
  EXPECT_EQ(rep.degree(), 10u);
  EXPECT_TRUE(is_homomorphism(rep));

  TempDir dir;
  const auto rep_file = dir.write("mu.json", nlohmann::json(canonical_mu(4)).dump());
  const auto sub_file = dir.write("h.json", R"({"degree":4,"generators":[[[1,2]],[[3,4]]]})");
  const auto generic = run_cli({"derive", "--rep", rep_file, "--subgroup", sub_file, "--json"});
  ASSERT_EQ(generic.code, 0) << generic.err;
  EXPECT_EQ(braid_rep_from_json(json_of(generic)).degree(), 6u);

  EXPECT_EQ(run_cli({"derive", "--rep", rep_file}).code, 2);
  EXPECT_EQ(run_cli({"derive", "--young2"}).code, 2);
  const auto wrong = dir.write("h5.json", R"({"degree":5,"generators":[[[1,2]]]})");
  EXPECT_EQ(run_cli({"derive", "--rep", rep_file, "--subgroup", wrong}).code, 2);
}

TEST(Cli, EnumerateModes)
{
  const auto cond = run_cli({"enumerate", "--m", "3", "--l", "1", "--k", "4", "--json", "--list"});
  ASSERT_EQ(cond.code, 0) << cond.err;
  const auto brute = run_cli({"enumerate", "--m", "3", "--l", "1", "--k", "4", "--brute", "--json", "--list"});
  ASSERT_EQ(brute.code, 0) << brute.err;
  EXPECT_EQ(json_of(cond)["tables_found"], 81);
  EXPECT_EQ(json_of(brute)["candidates"], 729);
  EXPECT_EQ(json_of(cond)["tables"], json_of(brute)["tables"]);
  for (const auto& t : json_of(cond)["tables"])
    EXPECT_TRUE(satisfies_condition_t(t.get<ModelParams>()));

  ::setenv("BRAIDREP_LIMIT", "100", 1);
  const auto limited = run_cli({"enumerate", "--m", "3", "--l", "1", "--k", "4", "--brute"});
  ::unsetenv("BRAIDREP_LIMIT");
  EXPECT_EQ(limited.code, 2);
  EXPECT_NE(limited.err.find("limit"), std::string::npos);
}

TEST(Cli, Standardize)
{
  std::mt19937_64 rng(6);
  const auto rep = conjugate(psi(3, 6), random_permutation(18, rng));
  const auto r = run_cli({"standardize", "--rep", nlohmann::json(rep).dump(), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto theta = Permutation::from_cycles(18, json_of(r)["conjugator"].get<std::vector<Cycle>>());
  EXPECT_EQ(conjugate(rep, theta), psi(3, 6));

  const auto bad = run_cli({"standardize", "--rep", nlohmann::json(phi(zero_params(3, 1, 6))).dump()});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("wrong supp"), std::string::npos);
}

TEST(Cli, CensusDeterminism)
{
  const std::vector<std::string> args{"census-m3", "--k", "9", "--trials", "6", "--seed", "5", "--json"};
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(json_of(a)["verdict"], "confirmed");
  EXPECT_EQ(json_of(a)["seed"], 5);
  EXPECT_NE(run_cli({"census-m3", "--k", "9", "--trials", "6", "--seed", "6", "--json"}).out, "");
}

// Every JSON document the CLI emits parses back to the same value.
TEST(Cli, JsonRoundTrip)
{
  const std::vector<std::vector<std::string>> commands{
    {"construct", "--psi", "--m", "2", "--k", "5", "--json"},
    {"construct", "--lin", "1", "--k", "5", "--json"},
    {"verify", "--rep", nlohmann::json(psi(2, 4)).dump(), "--json"},
    {"analyze", "--rep", nlohmann::json(lin_model(2, 4)).dump(), "--json"},
    {"normalize", "--model", R"({"m":4,"l":2,"k":3,"t":[[1,0,0,1],[0,1,0,1]]})", "--json"},
    {"conjugate", "--a", nlohmann::json(psi(2, 4)).dump(), "--b", nlohmann::json(lin_model(1, 4)).dump(), "--json"},
    {"derive", "--young2", "--k", "4", "--json"},
    {"enumerate", "--m", "2", "--l", "1", "--k", "3", "--list", "--json"},
    {"standardize", "--rep", nlohmann::json(psi(2, 4)).dump(), "--json"},
    {"census-m3", "--k", "4", "--trials", "3", "--seed", "1", "--json"},
  };
  for (const auto& cmd : commands) {
    const auto r = run_cli(cmd);
    ASSERT_LE(r.code, 1) << cmd.front() << ": " << r.err;
    const auto j = json_of(r);
    EXPECT_EQ(nlohmann::json::parse(j.dump()), j);
    EXPECT_EQ(j.dump() + "\n", r.out);
  }
  const auto c = json_of(run_cli(commands[0]));
  EXPECT_EQ(nlohmann::json(braid_rep_from_json(c)), c);
  const auto n = json_of(run_cli(commands[4]));
  EXPECT_EQ(nlohmann::json(n.get<NormalForm>()), n);
}
