/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "seqcflp/cli.hpp"
#include "seqcflp/generator.hpp"
#include "seqcflp/instance_io.hpp"
#include "seqcflp/report.hpp"
#include "test_support.hpp"

namespace seqcflp {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "seqcflp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / "seqcflp_workbench";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

TEST(SplitMix64, ReferenceSequence) {
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
  SplitMix64 u(42);
  for (int k = 0; k < 1000; ++k) {
    const double v = u.uniform01();
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(Generator, UtilityFormula) {
  EXPECT_NEAR(mnl_utility(0.0, 0.1, 10.0), std::exp(-1.0), 1e-16);
  EXPECT_NEAR(mnl_utility(0.0, 0.1, 10.0), 0.3678794412, 1e-10);
  EXPECT_EQ(mnl_utility(0.0, 0.7, 0.0), 1.0);
}

TEST(Generator, LayoutFollowsTheDocumentedDrawOrder) {
  GeneratorSpec spec;
  spec.num_customers = 3;
  spec.num_sites = 4;
  spec.p = 1;
  spec.r = 2;
  spec.seed = 99;
  const auto g = generate_instance(spec);
  SplitMix64 rng(99);
  auto coord = [&] { return std::floor(rng.uniform01() * 51.0); };
  for (const auto& pt : g.geometry.customer_xy) {
    EXPECT_EQ(pt[0], coord());
    EXPECT_EQ(pt[1], coord());
  }
  for (const auto& pt : g.geometry.site_xy) {
    EXPECT_EQ(pt[0], coord());
    EXPECT_EQ(pt[1], coord());
  }
  for (int i = 0; i < 3; ++i) {
    EXPECT_DOUBLE_EQ(g.instance.h(i), 1.0 / 3.0);
    EXPECT_EQ(g.instance.uL(i), 0.0);
    EXPECT_EQ(g.instance.uF(i), 0.0);
    for (int j = 0; j < 4; ++j) {
      const auto& c = g.geometry.customer_xy[i];
      const auto& s = g.geometry.site_xy[j];
      const double d = std::hypot(c[0] - s[0], c[1] - s[1]);
      EXPECT_DOUBLE_EQ(g.instance.w(i, j), std::exp(-0.1 * d));
      EXPECT_GE(c[0], 0.0);
      EXPECT_LE(c[0], 50.0);
    }
  }
  EXPECT_EQ(instance_name(g.instance), "3-4-1-2");
}

TEST(Generator, RandomDemandSumsToOne) {
  GeneratorSpec spec;
  spec.num_customers = 20;
  spec.num_sites = 5;
  spec.random_h = true;
  spec.seed = 5;
  const auto g = generate_instance(spec);
  double total = 0.0;
  for (double v : g.instance.demand()) total += v;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Generator, ReweightRebuildsUtilities) {
  GeneratorSpec spec;
  spec.num_customers = 4;
  spec.num_sites = 5;
  spec.seed = 8;
  const auto g = generate_instance(spec);
  const auto again = reweight(g.instance, g.geometry, 0.1);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 5; ++j) EXPECT_EQ(again.w(i, j), g.instance.w(i, j));
  }
  const auto steep = reweight(g.instance, g.geometry, 0.5);
  EXPECT_LE(steep.w(0, 0), g.instance.w(0, 0));
}

TEST(InstanceIo, RoundTripIsBitwiseOnCanonicalForm) {
  for (const auto& m : {testing::t1(), testing::t3()}) {
    const auto inst = m.instance();
    const std::string text = dump_instance(inst);
    const auto back = parse_instance(text);
    EXPECT_EQ(dump_instance(back.instance), text);
    EXPECT_FALSE(back.geometry.has_value());
  }
  GeneratorSpec spec;
  spec.num_customers = 6;
  spec.num_sites = 7;
  spec.seed = 12;
  const auto g = generate_instance(spec);
  const auto path = scratch("rt.json");
  write_instance(path, g.instance, &g.geometry);
  const auto back = read_instance(path);
  ASSERT_TRUE(back.geometry.has_value());
  EXPECT_EQ(dump_instance(back.instance, &*back.geometry), slurp(path));
  for (std::size_t k = 0; k < g.instance.utilities().size(); ++k) {
    EXPECT_EQ(back.instance.utilities()[k], g.instance.utilities()[k]);
  }
}

TEST(InstanceIo, RejectsBadDemandAndBudgets) {
  const std::string bad_h =
      R"({"version":1,"p":1,"r":1,"customers":[{"h":0.7,"uL":0,"uF":0,"w":[1,1]}]})";
  EXPECT_THROW(parse_instance(bad_h), SchemaError);
  const std::string bad_budget =
      R"({"version":1,"p":2,"r":1,"customers":[{"h":1,"uL":0,"uF":0,"w":[1,1]}]})";
  EXPECT_THROW(parse_instance(bad_budget), SchemaError);
}

TEST(InstanceIo, ErrorsCarryFieldPaths) {
  const std::string text =
      R"({"version":1,"p":1,"r":1,"customers":[{"h":0.5,"uL":0,"uF":0,"w":[1,1]},)"
      R"({"h":0.5,"uL":0,"uF":0,"w":[1,"x"]}]})";
  try {
    parse_instance(text);
    FAIL() << "expected a schema error";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.path(), "$.customers[1].w[1]");
  }
  try {
    parse_instance(R"({"version":1,"r":1,"customers":[]})");
    FAIL() << "expected a schema error";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.path(), "$.p");
  }
  EXPECT_THROW(parse_instance("{not json"), SchemaError);
  EXPECT_THROW(parse_instance(R"({"version":7,"p":1,"r":1,"customers":[]})"), SchemaError);
}

TEST(Report, CsvLayout) {
  EXPECT_EQ(csv_header(), "instance,config,Time(s),#Cuts,#Nodes,Gap_1,Gap_3,Gap_10");
  ReportRow row;
  row.instance = "20-20-2-2";
  row.config = "SCBI/approx";
  row.time = 1.25;
  row.cuts = 7;
  row.nodes = 3;
  row.gap[0] = 0.05;
  row.gap[1] = std::nan("");
  row.gap[2] = 0.0;
  EXPECT_EQ(csv_row(row), "20-20-2-2,SCBI/approx,1.250,7,3,5.0000,N/A,0.0000");
}

TEST(Report, SpearmanMatchesHandValues) {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const std::vector<double> up{2, 4, 6, 8, 10};
  const std::vector<double> down{5, 4, 3, 2, 1};
  EXPECT_NEAR(spearman(a, up), 1.0, 1e-15);
  EXPECT_NEAR(spearman(a, down), -1.0, 1e-15);
  // d = (0, 0, 1, -1, 0): 1 - 6*2/(5*24) = 0.9.
  const std::vector<double> swap{1, 2, 4, 3, 5};
  EXPECT_NEAR(spearman(a, swap), 0.9, 1e-15);
  EXPECT_THROW(spearman(std::vector<double>{1}, std::vector<double>{1}),
               std::invalid_argument);
}

TEST(Cli, SolveWorkedInstance) {
  const auto path = scratch("T3.json");
  write_instance(path, testing::t3().instance());
  const auto r = cli({"solve", "--cuts", "scbi", "--sep", "approx", path.string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("z=0.625 "), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("x=[0]"), std::string::npos) << r.out;
}

TEST(Cli, ApproxAndOracleOnWorkedInstance) {
  const auto path = scratch("T3b.json");
  write_instance(path, testing::t3().instance());
  const auto a = cli({"approx", "--with-oracle", path.string()});
  EXPECT_EQ(a.code, kExitOk) << a.err;
  EXPECT_NE(a.out.find("z_H=0.625 "), std::string::npos) << a.out;
  const auto o = cli({"oracle", path.string()});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NE(o.out.find("\"z_star\": 0.625"), std::string::npos) << o.out;
}

TEST(Cli, MalformedInputExitsWithInputError) {
  const auto path = scratch("broken.json");
  spit(path, R"({"version":1,"p":1})");
  const auto r = cli({"solve", path.string()});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("$.r"), std::string::npos) << r.err;
  EXPECT_EQ(cli({"solve", scratch("missing.json").string()}).code, kExitInputError);
  EXPECT_EQ(cli({"solve", "--cuts", "xyz", path.string()}).code, kExitInputError);
  EXPECT_EQ(cli({}).code, kExitInputError);
}

TEST(Cli, OracleOverBudgetIsALimit) {
  GeneratorSpec spec;
  spec.num_customers = 10;
  spec.num_sites = 12;
  spec.p = 3;
  spec.r = 3;
  const auto g = generate_instance(spec);
  const auto path = scratch("big.json");
  write_instance(path, g.instance, &g.geometry);
  EXPECT_EQ(cli({"oracle", "--budget", "10", path.string()}).code, kExitLimit);
}

TEST(Cli, NodeLimitIsALimit) {
  GeneratorSpec spec;
  spec.num_customers = 20;
  spec.num_sites = 20;
  spec.p = 2;
  spec.r = 2;
  spec.seed = 4;
  const auto g = generate_instance(spec);
  const auto path = scratch("nl.json");
  write_instance(path, g.instance, &g.geometry);
  const auto r = cli({"solve", "--node-limit", "1", "--cuts", "bi", path.string()});
  EXPECT_EQ(r.code, kExitLimit) << r.out;
}

TEST(Cli, GenNamesFilesAndIsDeterministic) {
  const fs::path dir = scratch("gen");
  fs::create_directories(dir);
  const auto a = cli({"gen", "-I", "5", "-J", "6", "-p", "2", "-r", "1", "--seed", "3",
                      "--out-dir", dir.string()});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  const fs::path file = dir / "5-6-2-1.json";
  ASSERT_TRUE(fs::exists(file));
  const std::string first = slurp(file);
  const auto b = cli({"gen", "-I", "5", "-J", "6", "-p", "2", "-r", "1", "--seed", "3",
                      "-o", (dir / "again.json").string()});
  ASSERT_EQ(b.code, kExitOk) << b.err;
  EXPECT_EQ(slurp(dir / "again.json"), first);
  const auto c = cli({"gen", "-I", "5", "-J", "6", "-p", "2", "-r", "1", "--h", "random",
                      "-o", (dir / "rand.json").string()});
  EXPECT_EQ(c.code, kExitOk) << c.err;
}

TEST(Cli, SweepAndReportAreReproducible) {
  GeneratorSpec spec;
  spec.num_customers = 12;
  spec.num_sites = 8;
  spec.p = 2;
  spec.r = 1;
  spec.seed = 21;
  const auto g = generate_instance(spec);
  const auto path = scratch("12-8-2-1.json");
  write_instance(path, g.instance, &g.geometry);

  const auto s1 = cli({"sweep-beta", "--betas", "0.1,0.3,0.5", path.string()});
  ASSERT_EQ(s1.code, kExitOk) << s1.err;
  EXPECT_EQ(s1.out.rfind("beta,z,x,status\n", 0), 0U);
  EXPECT_NE(s1.out.find("# spearman="), std::string::npos);
  const auto s2 = cli({"sweep-beta", "--betas", "0.1,0.3,0.5", "--method", "oracle",
                       path.string()});
  ASSERT_EQ(s2.code, kExitOk) << s2.err;
  // Exact and oracle sweeps agree on the objective column.
  std::istringstream l1(s1.out), l2(s2.out);
  std::string a, b;
  while (std::getline(l1, a) && std::getline(l2, b)) {
    if (a.rfind("#", 0) == 0 || a.rfind("beta", 0) == 0) continue;
    const auto za = std::stod(a.substr(a.find(',') + 1));
    const auto zb = std::stod(b.substr(b.find(',') + 1));
    EXPECT_NEAR(za, zb, 1e-6);
  }

  const auto r1 = cli({"report", "--no-timing", path.string()});
  const auto r2 = cli({"report", "--no-timing", path.string()});
  ASSERT_EQ(r1.code, kExitOk) << r1.err;
  EXPECT_EQ(r1.out, r2.out);
  EXPECT_EQ(r1.out.rfind(csv_header() + "\n", 0), 0U);
  EXPECT_NE(r1.out.find("12-8-2-1,SC/approx,0.000,"), std::string::npos) << r1.out;

  const auto j1 = cli({"solve", "--json", "--no-timing", path.string()});
  const auto j2 = cli({"solve", "--json", "--no-timing", path.string()});
  EXPECT_EQ(j1.out, j2.out);
  EXPECT_EQ(j1.out.find("wall_time"), std::string::npos);
}

TEST(Cli, SweepNeedsGeometry) {
  const auto path = scratch("T3c.json");
  write_instance(path, testing::t3().instance());
  EXPECT_EQ(cli({"sweep-beta", path.string()}).code, kExitInputError);
}

}  // namespace
}  // namespace seqcflp
