#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "grc/cli.hpp"
#include "grc/grc.hpp"

using namespace grc;

namespace {

const std::string kWorkspaces = std::string(GRC_SOURCE_DIR) + "/scenarios/";

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "grc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Workspace instance_workspace(const Instance& in, std::uint64_t seed) {
  Workspace ws;
  ws.modulus = in.h.source->modulus();
  ws.groups["G"] = in.h.source->group();
  ws.rings["R"] = {"G", in.h.source};
  ws.rings["S"] = {"G", in.h.target};
  ws.homs["h"] = {"R", "S", in.h};
  std::mt19937_64 rng(seed);
  ws.modules["M"] = {"R", random_module(in.h.source, rng)};
  ws.modules["N"] = {"S", random_module(in.h.target, rng)};
  ws.modules["P"] = {"S", shift(regular_module(in.h.target), in.h.target->support().back())};
  ws.morphisms["u"] = {"M", "M", add(identity_morphism(ws.modules["M"].module),
                                     identity_morphism(ws.modules["M"].module))};
  for (std::size_t k = 0; k < in.coarsenings.size(); ++k) {
    const std::string g = "H" + std::to_string(k);
    ws.groups[g] = in.coarsenings[k].target();
    ws.epis["psi" + std::to_string(k)] = {"G", g, in.coarsenings[k]};
  }
  return ws;
}

}  // namespace

TEST(Workspace, shipped_files_match_embedded_copies) {
  for (const auto& [name, text] : shipped_workspaces()) EXPECT_EQ(slurp(kWorkspaces + name), text) << name;
}

TEST(Workspace, d40C_file) {
  const auto ws = parse_workspace(slurp(kWorkspaces + "d40C.grc"));
  EXPECT_EQ(ws.modulus, 4);
  EXPECT_EQ(ws.ring("R").ring->cardinality(), 4u);
  EXPECT_EQ(ws.ring("S").ring->cardinality(), 2u);
  const auto z = z4_to_z2();
  EXPECT_EQ(ws.hom("h").hom, z.h);
  EXPECT_EQ(*ws.module("M").module, *restrict(z.h, regular_module(z.h.target)));
  EXPECT_EQ(*ws.module("N").module, *regular_module(z.h.source));
}

TEST(Workspace, shipped_files_describe_the_corpus) {
  const auto d25 = shipped_workspace("d25E.grc");
  EXPECT_EQ(d25.hom("h").hom, truncation("none").h);
  EXPECT_EQ(d25.hom("hg").hom, truncation("z3").h);
  const auto fr = shipped_workspace("frobenius.grc");
  EXPECT_EQ(fr.hom("f").hom, frobenius(false).h);
  EXPECT_EQ(fr.hom("fg").hom, frobenius(true).h);
  const auto cu = shipped_workspace("cubic.grc");
  EXPECT_EQ(cu.hom("id").hom, cubic_identity().h);
  EXPECT_EQ(cu.hom("trunc").hom, truncation("z").h);
}

TEST(Workspace, round_trip) {
  for (const auto& in : standard_instances())
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto ws = instance_workspace(in, seed);
      const auto text = serialize_workspace(ws);
      const auto back = parse_workspace(text);
      EXPECT_EQ(back, ws) << in.name;
      EXPECT_EQ(serialize_workspace(back), text) << in.name;
    }
  for (const auto& [name, text] : shipped_workspaces()) {
    const auto ws = parse_workspace(text);
    EXPECT_EQ(parse_workspace(serialize_workspace(ws)), ws) << name;
  }
}

TEST(Workspace, empty_input) {
  EXPECT_TRUE(parse_workspace("").empty());
  const auto ws = parse_workspace("# nothing\nmodulus 6\n");
  EXPECT_TRUE(ws.empty());
  EXPECT_EQ(ws.modulus, 6);
}

TEST(Workspace, parse_errors_carry_position) {
  auto position = [](const std::string& text) {
    try {
      parse_workspace(text);
    } catch (const ParseError& e) {
      return std::make_pair(e.line(), e.column());
    }
    return std::make_pair(std::size_t{0}, std::size_t{0});
  };
  EXPECT_EQ(position("modulus 2\ngroup T\nring R over T\n  component () gens x\nend\n"), std::make_pair(4ul, 21ul));
  EXPECT_EQ(position("modulus 2\nmodule M over Nope\nend\n"), std::make_pair(2ul, 15ul));
  EXPECT_EQ(position("group T\nring R over T\nend\n"), std::make_pair(2ul, 6ul));
  EXPECT_EQ(position("modulus 2\ngroup T\nring R over T\n  component (0 gens 1\n"), std::make_pair(4ul, 13ul));
  EXPECT_EQ(position("modulus 2\ngroup T\nring R over T\n  component () gens 1\n  one 1\n"), std::make_pair(3ul, 1ul));
  EXPECT_EQ(position("modulus 2\nfrobnicate\n"), std::make_pair(2ul, 1ul));
  EXPECT_EQ(position("group T\ngroup T\n"), std::make_pair(2ul, 7ul));
}

TEST(Workspace, validation_errors_carry_axiom) {
  auto axiom_of = [](const std::string& text) {
    try {
      parse_workspace(text);
    } catch (const ValidationError& e) {
      return e.axiom();
    }
    return std::string("none");
  };
  const std::string head = "modulus 2\ngroup T\n";
  EXPECT_EQ(axiom_of(head + "ring R over T\n  component () gens 1\n  mult () 0 () 0 = 1\n  one 0\nend\n"),
            axiom::unitality);
  EXPECT_EQ(axiom_of(head + "ring R over T\n  component () gens 2\n  mult () 0 () 0 = 1 0\n  mult () 0 () 1 = 0 1\n"
                            "  mult () 1 () 1 = 1 1\n  one 0 1\nend\n"),
            axiom::unitality);
  // X*X = Y, X*Y = X, Y*Y = 0: (X*X)*Y = 0 but X*(X*Y) = Y
  EXPECT_EQ(axiom_of("modulus 2\ngroup T\nring R over T\n  component () gens 3\n  mult () 0 () 0 = 1 0 0\n"
                     "  mult () 0 () 1 = 0 1 0\n  mult () 0 () 2 = 0 0 1\n  mult () 1 () 1 = 0 0 1\n"
                     "  mult () 1 () 2 = 0 1 0\n  one 1 0 0\nend\n"),
            axiom::associativity);
  EXPECT_EQ(axiom_of(head + "ring R over T\n  component () gens 1\n  mult () 0 () 0 = 1\n  one 1\nend\n"
                            "ring S over T\n  component () gens 1\n  mult () 0 () 0 = 1\n  one 1\nend\n"
                            "hom h : R -> S\nend\n"),
            axiom::unitality);
}

TEST(Workspace, merge_rejects_clashes) {
  Workspace a = shipped_workspace("d40C.grc");
  EXPECT_THROW(a.merge(shipped_workspace("frobenius.grc")), UnknownName);
  Workspace b = shipped_workspace("d25E.grc");
  EXPECT_THROW(b.merge(shipped_workspace("frobenius.grc")), UnknownName);
}

TEST(Report, json_and_text_carry_the_same_flags) {
  const auto z = z4_to_z2();
  const auto j = analysis_report(theta(z.h, restrict(z.h, regular_module(z.h.target)), regular_module(z.h.source)).map);
  const auto text = emit_report(j, Format::Text);
  const auto parsed = Json::parse(emit_report(j, Format::Json));
  EXPECT_EQ(parsed["format_version"], kFormatVersion);
  for (const auto& [k, v] : parsed["flags"].items())
    EXPECT_NE(text.find("  " + k + ": " + (v.get<bool>() ? "true" : "false") + "\n"), std::string::npos) << k;
}

TEST(Cli, epitest) {
  const auto r = cli({"epitest", "--h", "z4_to_z2"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "ring epimorphism: true\n");
  const auto f = cli({"--input", kWorkspaces + "frobenius.grc", "epitest", "--h", "fg"});
  EXPECT_EQ(f.out, "ring epimorphism: false\n");
}

TEST(Cli, scenarios_pass) {
  for (const auto& s : scenarios()) {
    const auto r = cli({"scenario", "run", s.name});
    EXPECT_EQ(r.code, kExitOk) << s.name << r.err;
  }
  const auto list = cli({"scenario", "list", "--format", "json"});
  EXPECT_EQ(Json::parse(list.out)["scenarios"].size(), 6u);
}

TEST(Cli, input_errors) {
  EXPECT_EQ(cli({"--input", kWorkspaces + "d40C.grc", "analyze", "nope"}).code, kExitInput);
  EXPECT_EQ(cli({"--input", "/nonexistent.grc", "validate"}).code, kExitInput);
  EXPECT_EQ(cli({"scenario", "run", "nope"}).code, kExitInput);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitInput);
  EXPECT_EQ(cli({"--input", kWorkspaces + "d40C.grc", "canon", "theta", "h", "M"}).code, kExitInput);
  const auto r = cli({"--input", kWorkspaces + "d40C.grc", "--input", kWorkspaces + "frobenius.grc", "validate"});
  EXPECT_EQ(r.code, kExitInput);
}

TEST(Cli, battery_lists_statements_in_order) {
  const auto r = cli({"--input", kWorkspaces + "d40C.grc", "battery", "--h", "h", "--family", "M", "--format",
                      "json"});
  ASSERT_EQ(r.code, kExitInput) << "M lives over R, not S";
  const auto ok = cli({"--input", kWorkspaces + "d40C.grc", "battery", "--h", "h", "--family", "S", "--random", "3",
                       "--format", "json"});
  ASSERT_EQ(ok.code, kExitOk) << ok.err;
  const auto j = Json::parse(ok.out);
  ASSERT_EQ(j["verdicts"].size(), 7u);
  for (std::size_t i = 0; i < 7; ++i) {
    EXPECT_EQ(j["verdicts"][i]["statement"], EpiBatteryReport::statements[i]);
    EXPECT_TRUE(j["verdicts"][i]["verdict"].get<bool>());
  }
}

TEST(Cli, subcommands_are_deterministic) {
  const std::string d40 = kWorkspaces + "d40C.grc", d25 = kWorkspaces + "d25E.grc", fr = kWorkspaces + "frobenius.grc";
  const std::vector<std::vector<std::string>> runs{
      {"-i", d40, "validate"},
      {"-i", d25, "tensor", "Q", "Q"},
      {"-i", d25, "hom", "Q", "R"},
      {"-i", fr, "coarsen", "Ag", "--psi", "psi"},
      {"-i", fr, "restrict", "--h", "fg", "Ag"},
      {"-i", fr, "extend", "--h", "fg", "Kg"},
      {"-i", fr, "coextend", "--h", "fg", "Kg"},
      {"-i", d40, "canon", "theta", "h", "M", "N", "--format", "json"},
      {"-i", d25, "analyze", "Q"},
      {"-i", fr, "battery", "--h", "fg", "--random", "4", "--seed", "9"},
      {"scenario", "run", "all", "--seed", "5"},
  };
  for (const auto& args : runs) {
    const auto a = cli(args), b = cli(args);
    EXPECT_EQ(a.code, kExitOk) << args[2] << a.err;
    EXPECT_EQ(a.out, b.out) << args[2];
  }
}

TEST(Cli, canonical_maps_by_name) {
  const std::string fr = kWorkspaces + "frobenius.grc";
  for (const std::vector<std::string> args :
       {std::vector<std::string>{"underline", "f"}, {"rho", "f", "K"}, {"sigma", "f", "A"}, {"rho_tilde", "f", "A"},
        {"sigma_tilde", "f", "K"}, {"delta", "f", "K", "K"}, {"gamma", "f", "A", "A"}, {"eta", "f", "A", "A"},
        {"theta", "f", "K", "K"}, {"mu", "f", "A", "K"}, {"nu", "f", "A", "K", "K"}, {"alpha", "f", "A", "A", "K"},
        {"tau", "A"}, {"tau3", "A", "A", "A"}, {"kappa", "A", "A", "A"}, {"lambda", "A", "A", "A"}}) {
    std::vector<std::string> line{"-i", fr, "canon"};
    line.insert(line.end(), args.begin(), args.end());
    const auto r = cli(line);
    EXPECT_EQ(r.code, kExitOk) << args[0] << r.err;
    EXPECT_NE(r.out.find("name: " + args[0]), std::string::npos) << args[0];
  }
  const auto beta = cli({"-i", fr, "canon", "beta", "psi", "fg", "Kg", "--format", "json"});
  ASSERT_EQ(beta.code, kExitOk) << beta.err;
  EXPECT_TRUE(Json::parse(beta.out)["flags"]["iso"].get<bool>());
}

TEST(Cli, golden_outputs) {
  const std::string golden = std::string(GRC_SOURCE_DIR) + "/tests/golden/";
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"scenario_d40C.txt", {"scenario", "run", "d40C"}},
      {"battery_z4_to_z2.txt", {"battery", "--h", "z4_to_z2"}},
      {"canon_epsilon_d25E.json", {"-i", kWorkspaces + "d25E.grc", "canon", "epsilon", "h", "R", "Q", "--format", "json"}},
      {"validate_d40C.txt", {"-i", kWorkspaces + "d40C.grc", "validate"}},
  };
  for (const auto& [file, args] : cases) {
    const auto r = cli(args);
    EXPECT_EQ(r.code, kExitOk) << file;
    EXPECT_EQ(r.out, slurp(golden + file)) << file;
  }
}
