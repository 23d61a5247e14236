// Copyright 2026 The adregret Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "adregret/auction.h"
#include "adregret/bid_sequence.h"
#include "adregret/bidder_sim.h"
#include "adregret/equilibrium.h"
#include "adregret/error.h"
#include "adregret/estimators.h"
#include "adregret/evalkit.h"
#include "adregret/io.h"
#include "adregret/regret.h"

namespace adregret::cli {
namespace {

constexpr const char* kReportSchema = "adregret.report/1";
constexpr const char* kEvaluationSchema = "adregret.evaluation/1";
constexpr const char* kHashSuffix = ".fnv1a";

// Options naming files that are read.
std::vector<std::string> InputKeys(const std::string& command) {
  if (command == "simulate") return {"replay"};
  return {"log", "values", "estimates"};
}

std::vector<OptionSpec> Common() {
  return {
      {"config", "", "key=value file supplying any option of this command"},
      {"mechanism", "gsp", "auction mechanism: gsp or vcg"},
      {"ctrs", "0.38,0.29,0.20,0.11,0.02",
       "click-through rates, top slot first"},
      {"bids", "1:60", "bid grid lo:hi"},
  };
}

std::vector<OptionSpec> With(std::vector<OptionSpec> base,
                             std::vector<OptionSpec> extra) {
  base.insert(base.end(), extra.begin(), extra.end());
  return base;
}

const std::map<std::string, std::vector<OptionSpec>, std::less<>>& Table() {
  static const auto* table = new std::map<std::string, std::vector<OptionSpec>,
                                          std::less<>>{
      {"simulate",
       With(Common(),
            {{"seed", "0", "session seed; defaults to $ADREGRET_SEED or 0"},
             {"rounds", "1500", "auctions per session"},
             {"values", "21,27,33,39,45", "per-click values, one per agent"},
             {"agent", "hedge",
              "truthful-noisy, hedge, eps-greedy, biased or replay"},
             {"sigma", "0", "bid noise (truthful-noisy, biased)"},
             {"eta", "auto", "hedge learning rate; auto = sqrt(ln|B|/T)"},
             {"epsilon", "0.1", "eps-greedy exploration probability"},
             {"slope", "0.4", "biased overbid slope"},
             {"replay", "", "bid log replayed column by column (agent=replay)"},
             {"out", "", "output directory", false, true}})},
      {"regret",
       With(Common(),
            {{"log", "", "bid log CSV", false, true},
             {"values", "", "values CSV (bidder_id,value)", false, true},
             {"wide", "false", "bid log is in wide form", true},
             {"window", "second-half", "second-half, full or a:b"},
             {"grid", "1:60", "valuation grid lo:hi"},
             {"block", "60", "auctions per momentary block"},
             {"out", "", "output directory", false, true}})},
      {"estimate",
       With(Common(),
            {{"log", "", "bid log CSV", false, true},
             {"wide", "false", "bid log is in wide form", true},
             {"method", "regret-min", "comma-separated estimator names"},
             {"combine", "regret-min,avg-bid",
              "constituents of the combined estimator"},
             {"window", "second-half", "second-half, full or a:b"},
             {"grid", "1:60", "valuation grid lo:hi"},
             {"objective", "absolute", "regret-min objective: absolute or relative"},
             {"ne-top", "second", "top-slot rule for vcg-ne: second or max"},
             {"ne-averaging", "identity", "vcg-ne averaging: identity or rank"},
             {"diagnostics", "", "directory for per-method diagnostic CSVs"},
             {"out", "", "estimates CSV", false, true}})},
      {"evaluate",
       {{"config", "", "key=value file supplying any option of this command"},
        {"estimates", "", "estimates CSV", false, true},
        {"values", "", "values CSV", false, true},
        {"log", "", "bid log CSV, for modal positions", false, true},
        {"wide", "false", "bid log is in wide form", true},
        {"window", "second-half", "second-half, full or a:b"},
        {"out", "", "output directory", false, true}}},
      {"report",
       With(Common(),
            {{"log", "", "bid log CSV", false, true},
             {"values", "", "values CSV", false, true},
             {"wide", "false", "bid log is in wide form", true},
             {"method", "regret-min,avg-bid,regret-weighted,combined,best-response",
              "comma-separated estimator names"},
             {"combine", "regret-min,avg-bid",
              "constituents of the combined estimator"},
             {"window", "second-half", "second-half, full or a:b"},
             {"grid", "1:60", "valuation grid lo:hi"},
             {"objective", "absolute", "regret-min objective: absolute or relative"},
             {"ne-top", "second", "top-slot rule for vcg-ne: second or max"},
             {"ne-averaging", "identity", "vcg-ne averaging: identity or rank"},
             {"block", "60", "auctions per momentary block"},
             {"out", "", "report JSON", false, true}})},
  };
  return *table;
}

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, what);
}

std::string Fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double ToDouble(const std::string& key, const std::string& text) {
  double x = 0.0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || p != text.data() + text.size() || text.empty()) {
    Invalid("option '" + key + "' expects a number, got '" + text + "'");
  }
  return x;
}

template <class Int>
Int ToInt(const std::string& key, const std::string& text) {
  Int x = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || p != text.data() + text.size() || text.empty()) {
    Invalid("option '" + key + "' expects an integer, got '" + text + "'");
  }
  return x;
}

std::vector<double> ToDoubles(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : SplitList(text)) out.push_back(ToDouble(key, item));
  if (out.empty()) Invalid("option '" + key + "' is empty");
  return out;
}

bool ToBool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  Invalid("option '" + key + "' expects true or false, got '" + text + "'");
}

// Typed view of a resolved option map.
class Args {
 public:
  explicit Args(const Options& options) : options_(options) {}

  const std::string& Str(const std::string& key) const {
    auto it = options_.find(key);
    if (it == options_.end()) Invalid("missing option '" + key + "'");
    return it->second;
  }
  double Double(const std::string& key) const { return ToDouble(key, Str(key)); }
  int Int(const std::string& key) const { return ToInt<int>(key, Str(key)); }
  bool Bool(const std::string& key) const { return ToBool(key, Str(key)); }

  AuctionRules Rules() const {
    AuctionRules rules;
    rules.mechanism = ParseMechanism(Str("mechanism"));
    rules.ctrs = CtrProfile(ToDoubles("ctrs", Str("ctrs")));
    return rules;
  }

  BidSequence Log() const {
    return Bool("wide") ? LoadWideBidLog(Str("log")) : LoadBidLog(Str("log"));
  }

  Window ResolveWindow(int auctions) const {
    const std::string& w = Str("window");
    if (w == "second-half") return Window::SecondHalf(auctions);
    if (w == "full") return Window::Full(auctions);
    return ParseWindow(w);
  }

 private:
  const Options& options_;
};

// Reads a key=value config file. Blank lines and '#' comments are skipped.
Options ReadConfig(const std::string& path,
                   const std::vector<OptionSpec>& specs) {
  std::istringstream in(ReadFile(path));
  Options out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kParse, path + ":" + std::to_string(line_no) +
                                         ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto f = s.find_first_not_of(" \t\r");
      if (f == std::string::npos) return std::string();
      return s.substr(f, s.find_last_not_of(" \t\r") - f + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    bool known = false;
    for (const auto& s : specs) known = known || (s.key == key && key != "config");
    if (!known) {
      throw Error(ErrorCode::kParse, path + ":" + std::to_string(line_no) +
                                         ": unknown key '" + key + "'");
    }
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

void CheckInputs(const RunManifest& manifest) {
  const Options& options = manifest.options;
  for (const auto& key : InputKeys(manifest.command)) {
    auto it = options.find(key);
    auto hash = options.find(key + kHashSuffix);
    if (it == options.end() || it->second.empty() || hash == options.end()) {
      continue;
    }
    if (Fnv1a(ReadFile(it->second)) != hash->second) {
      throw Error(ErrorCode::kIo, "input '" + it->second +
                                      "' changed since the manifest was written");
    }
  }
}

// --- estimation --------------------------------------------------------------

struct EstimateContext {
  const BidSequence& seq;
  AuctionRules rules;
  Window window;
  Grid valuations;
  Grid bids;
  RegretObjective objective = RegretObjective::kAbsolute;
  VcgNeOptions ne;
  std::vector<Method> combine;
  std::string diagnostics;  // directory, or empty
  std::string manifest_block;
  std::ostream* log = nullptr;
};

void WriteDiagnostic(const EstimateContext& ctx, const std::string& name,
                     const std::string& body) {
  if (ctx.diagnostics.empty()) return;
  WriteFileAtomic((std::filesystem::path(ctx.diagnostics) / name).string(),
                  ctx.manifest_block + body);
}

std::vector<EstimateRecord> EstimatesFor(Method method,
                                         const EstimateContext& ctx) {
  const BidSequence& seq = ctx.seq;
  std::vector<EstimateRecord> out;
  switch (method) {
    case Method::kRegretMin:
    case Method::kRegretWeighted: {
      std::vector<RegretCurve> curves;
      for (int i = 0; i < seq.bidders(); ++i) {
        curves.push_back(ComputeRegretCurve(seq, i, ctx.valuations, ctx.bids,
                                            ctx.window, ctx.rules));
        out.push_back(method == Method::kRegretMin
                          ? EstimateRegretMin(curves.back(), ctx.objective)
                          : EstimateRegretWeighted(curves.back()));
      }
      WriteDiagnostic(ctx, std::string(MethodName(method)) + "_curves.csv",
                      RegretCurvesCsv(curves));
      return out;
    }
    case Method::kAverageBid:
      return AverageBidEstimates(seq, ctx.window);
    case Method::kCombined: {
      if (ctx.combine.size() < 2) Invalid("--combine needs at least two methods");
      std::vector<std::vector<EstimateRecord>> parts;
      for (Method m : ctx.combine) {
        if (m == Method::kCombined) Invalid("--combine cannot contain combined");
        parts.push_back(EstimatesFor(m, ctx));
      }
      for (std::size_t i = 0; i < parts.front().size(); ++i) {
        std::vector<EstimateRecord> same;
        for (const auto& p : parts) {
          if (p.size() != parts.front().size()) {
            Invalid("combined methods disagree on the bidder set");
          }
          same.push_back(p[i]);
        }
        out.push_back(CombineMean(same));
      }
      return out;
    }
    case Method::kVcgNe:
    case Method::kVcgNeRaw: {
      VcgNeOptions options = ctx.ne;
      options.perturb = method == Method::kVcgNe;
      VcgNeResult result =
          EstimateVcgLikeNe(seq, ctx.rules.ctrs, ctx.window, options);
      if (ctx.rules.mechanism == Mechanism::kVcg) {
        *ctx.log << "warning: " << MethodName(method)
                 << " assumes GSP equilibria; estimates on a VCG log are flagged\n";
        for (auto& r : result.estimates) r.AddFlag(flags::kMechanismMismatch);
      }
      WriteDiagnostic(ctx, std::string(MethodName(method)) + "_deviations.csv",
                      DeviationsCsv(result.deviations));
      return result.estimates;
    }
    case Method::kBestResponse:
    case Method::kBrFoc:
    case Method::kBrFocOutliers:
    case Method::kBrFullGame:
    case Method::kBrAvgValue: {
      std::vector<ResponseCurves> curves;
      const Window span = VariantFor(method).span ==
                                  BestResponseVariant::Span::kFullGame
                              ? Window::Full(seq.auctions())
                              : ctx.window;
      for (int i = 0; i < seq.bidders(); ++i) {
        out.push_back(EstimateBestResponse(seq, i, ctx.rules, ctx.window,
                                           method, ctx.valuations, ctx.bids));
        if (!ctx.diagnostics.empty()) {
          curves.push_back(
              ComputeResponseCurves(seq, i, ctx.bids, span, ctx.rules));
        }
      }
      WriteDiagnostic(ctx,
                      std::string(MethodName(method)) + "_response_curves.csv",
                      ResponseCurvesCsv(curves));
      return out;
    }
  }
  return out;
}

EstimateContext MakeContext(const Args& args, const BidSequence& seq,
                            const RunManifest& manifest, std::ostream& log) {
  EstimateContext ctx{seq, args.Rules(), args.ResolveWindow(seq.auctions()),
                      ParseGrid(args.Str("grid")), ParseGrid(args.Str("bids"))};
  seq.CheckWindow(ctx.window);
  const std::string& objective = args.Str("objective");
  if (objective == "relative") {
    ctx.objective = RegretObjective::kRelative;
  } else if (objective != "absolute") {
    Invalid("--objective must be absolute or relative");
  }
  const std::string& top = args.Str("ne-top");
  if (top == "max") {
    ctx.ne.top_rule = TopRule::kMaxSecondOwn;
  } else if (top != "second") {
    Invalid("--ne-top must be second or max");
  }
  const std::string& averaging = args.Str("ne-averaging");
  if (averaging == "rank") {
    ctx.ne.averaging = NeAveraging::kByRank;
  } else if (averaging != "identity") {
    Invalid("--ne-averaging must be identity or rank");
  }
  for (const auto& name : SplitList(args.Str("combine"))) {
    ctx.combine.push_back(ParseMethod(name));
  }
  if (manifest.command == "estimate") ctx.diagnostics = args.Str("diagnostics");
  ctx.manifest_block = manifest.CommentBlock();
  ctx.log = &log;
  return ctx;
}

std::vector<EstimateRecord> RunMethods(const Args& args,
                                       const EstimateContext& ctx) {
  const auto names = SplitList(args.Str("method"));
  if (names.empty()) Invalid("--method is empty");
  std::vector<EstimateRecord> records;
  for (const auto& name : names) {
    auto part = EstimatesFor(ParseMethod(name), ctx);
    records.insert(records.end(), part.begin(), part.end());
  }
  return records;
}

std::vector<double> CheckedValues(const Args& args, const BidSequence& seq) {
  std::vector<double> values = LoadValues(args.Str("values"));
  if (static_cast<int>(values.size()) != seq.bidders()) {
    throw Error(ErrorCode::kLengthMismatch,
                "values file has " + std::to_string(values.size()) +
                    " bidders, bid log has " + std::to_string(seq.bidders()));
  }
  return values;
}

std::vector<int> Ranks(const BidSequence& seq, const Window& window) {
  std::vector<int> ranks;
  for (const auto& m : ModalPositions(seq, window)) ranks.push_back(m.rank);
  return ranks;
}

std::string Join(const std::filesystem::path& dir, const char* name) {
  return (dir / name).string();
}

nlohmann::json Num(double x) {
  if (std::isnan(x)) return nullptr;
  return RoundForOutput(x);
}

nlohmann::json OptNum(const std::optional<double>& x) {
  return x ? Num(*x) : nlohmann::json(nullptr);
}

// --- commands ----------------------------------------------------------------

void Simulate(const RunManifest& manifest, std::ostream&) {
  const Args args(manifest.options);
  SessionConfig config;
  config.rules = args.Rules();
  config.rounds = args.Int("rounds");
  config.bids = ParseGrid(args.Str("bids"));
  config.seed = ToInt<std::uint64_t>("seed", args.Str("seed"));
  const std::vector<double> values = ToDoubles("values", args.Str("values"));

  const std::string& agent = args.Str("agent");
  std::optional<BidSequence> replay;
  if (agent == "replay") {
    if (args.Str("replay").empty()) Invalid("agent=replay needs --replay");
    replay = LoadBidLog(args.Str("replay"));
    if (replay->bidders() != static_cast<int>(values.size())) {
      throw Error(ErrorCode::kLengthMismatch,
                  "replay log bidder count differs from --values");
    }
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    AgentKind kind;
    if (agent == "truthful-noisy") {
      kind = TruthfulNoisy{args.Double("sigma")};
    } else if (agent == "hedge") {
      Hedge h;
      if (args.Str("eta") != "auto") h.eta = args.Double("eta");
      kind = h;
    } else if (agent == "eps-greedy") {
      kind = EpsGreedy{args.Double("epsilon")};
    } else if (agent == "biased") {
      kind = BiasedOverbidder{args.Double("slope"), args.Double("sigma")};
    } else if (agent == "replay") {
      Replay r;
      for (int t = 1; t <= replay->auctions(); ++t) {
        r.bids.push_back(replay->bid(t, static_cast<int>(i)));
      }
      kind = r;
    } else {
      Invalid("unknown agent '" + agent + "'");
    }
    config.agents.push_back({kind, values[i]});
  }

  const SessionResult result = RunSession(config);
  const std::filesystem::path dir(args.Str("out"));
  const std::string head = manifest.CommentBlock();
  WriteFileAtomic(Join(dir, "bids.csv"), head + BidLogCsv(result.bids));
  WriteFileAtomic(Join(dir, "values.csv"), head + ValuesCsv(result.values));
  WriteFileAtomic(Join(dir, "outcomes.csv"), head + OutcomesCsv(result.outcomes));
}

void RegretCommand(const RunManifest& manifest, std::ostream&) {
  const Args args(manifest.options);
  const AuctionRules rules = args.Rules();
  const BidSequence seq = args.Log();
  const std::vector<double> values = CheckedValues(args, seq);
  const Window window = args.ResolveWindow(seq.auctions());
  seq.CheckWindow(window);
  const Grid valuations = ParseGrid(args.Str("grid"));
  const Grid bids = ParseGrid(args.Str("bids"));
  const int block = args.Int("block");

  std::vector<RegretCurve> curves;
  std::ostringstream totals;
  totals << "bidder_id,value,actual,opt,regret,relative\n";
  for (int i = 0; i < seq.bidders(); ++i) {
    curves.push_back(
        ComputeRegretCurve(seq, i, valuations, bids, window, rules));
    const RegretReport r = Regret(seq, i, values[i], window, rules, bids);
    totals << i + 1 << ',' << FormatFixed(values[i]) << ','
           << FormatFixed(r.actual) << ',' << FormatFixed(r.opt) << ','
           << FormatFixed(r.regret) << ','
           << (r.relative ? FormatFixed(*r.relative) : std::string()) << '\n';
  }
  const auto groups = GroupsByType(values);
  std::ostringstream group_csv;
  group_csv << "group,regret,opt,relative\n";
  for (const auto& g : groups) {
    const GroupRegret r =
        GroupRelativeRegret(seq, g.members, values, window, rules, bids);
    group_csv << g.label << ',' << FormatFixed(r.regret) << ','
              << FormatFixed(r.opt) << ','
              << (r.relative ? FormatFixed(*r.relative) : std::string()) << '\n';
  }
  const auto momentary =
      MomentaryRegretSeries(seq, values, groups, block, rules, bids);
  const auto welfare = WelfareSeries(seq, values, block, rules);

  const std::filesystem::path dir(args.Str("out"));
  const std::string head = manifest.CommentBlock();
  WriteFileAtomic(Join(dir, "curves.csv"), head + RegretCurvesCsv(curves));
  WriteFileAtomic(Join(dir, "totals.csv"), head + totals.str());
  WriteFileAtomic(Join(dir, "groups.csv"), head + group_csv.str());
  WriteFileAtomic(Join(dir, "momentary.csv"), head + MomentaryCsv(momentary));
  WriteFileAtomic(Join(dir, "welfare.csv"), head + WelfareCsv(welfare));
}

void Estimate(const RunManifest& manifest, std::ostream& log) {
  const Args args(manifest.options);
  const BidSequence seq = args.Log();
  const EstimateContext ctx = MakeContext(args, seq, manifest, log);
  const auto records = RunMethods(args, ctx);
  WriteFileAtomic(args.Str("out"), ctx.manifest_block + EstimatesCsv(records));
}

void EvaluateCommand(const RunManifest& manifest, std::ostream&) {
  const Args args(manifest.options);
  const BidSequence seq = args.Log();
  const std::vector<double> values = CheckedValues(args, seq);
  const auto records = LoadEstimates(args.Str("estimates"));
  const Window window = args.ResolveWindow(seq.auctions());
  seq.CheckWindow(window);
  const EvaluationReport report = Evaluate(records, values, Ranks(seq, window));

  nlohmann::json doc = {{"schema", kEvaluationSchema},
                        {"manifest", manifest.ToJson()}};
  doc.update(ToJson(report));
  const std::filesystem::path dir(args.Str("out"));
  WriteFileAtomic(Join(dir, "evaluation.json"), doc.dump(2) + "\n");
  WriteFileAtomic(Join(dir, "evaluation.csv"),
                  manifest.CommentBlock() + ToCsv(report));
}

void Report(const RunManifest& manifest, std::ostream& log) {
  const Args args(manifest.options);
  const BidSequence seq = args.Log();
  const std::vector<double> values = CheckedValues(args, seq);
  const EstimateContext ctx = MakeContext(args, seq, manifest, log);
  const auto records = RunMethods(args, ctx);
  const int block = args.Int("block");

  nlohmann::json estimates = nlohmann::json::array();
  for (const auto& r : records) {
    estimates.push_back({{"bidder_id", r.bidder + 1},
                         {"method", r.label},
                         {"estimate", Num(r.estimate)},
                         {"window", {r.window.first, r.window.last}},
                         {"flags", r.flags}});
  }
  nlohmann::json bidders = nlohmann::json::array();
  for (int i = 0; i < seq.bidders(); ++i) {
    const RegretReport r =
        Regret(seq, i, values[i], ctx.window, ctx.rules, ctx.bids);
    bidders.push_back({{"bidder_id", i + 1},
                       {"value", Num(values[i])},
                       {"actual", Num(r.actual)},
                       {"opt", Num(r.opt)},
                       {"regret", Num(r.regret)},
                       {"relative", OptNum(r.relative)}});
  }
  const auto groups = GroupsByType(values);
  nlohmann::json group_json = nlohmann::json::array();
  for (const auto& g : groups) {
    const GroupRegret r = GroupRelativeRegret(seq, g.members, values,
                                              ctx.window, ctx.rules, ctx.bids);
    group_json.push_back({{"group", g.label},
                          {"regret", Num(r.regret)},
                          {"opt", Num(r.opt)},
                          {"relative", OptNum(r.relative)}});
  }
  nlohmann::json momentary = nlohmann::json::array();
  for (const auto& b : MomentaryRegretSeries(seq, values, groups, block,
                                             ctx.rules, ctx.bids)) {
    momentary.push_back({{"block", b.index},
                         {"group", b.group},
                         {"window", {b.window.first, b.window.last}},
                         {"partial", b.partial},
                         {"relative", OptNum(b.regret.relative)}});
  }
  nlohmann::json welfare = nlohmann::json::array();
  for (const auto& b : WelfareSeries(seq, values, block, ctx.rules)) {
    welfare.push_back({{"block", b.index},
                       {"window", {b.window.first, b.window.last}},
                       {"partial", b.partial},
                       {"normalized", Num(b.normalized)}});
  }

  nlohmann::json doc = {
      {"schema", kReportSchema},
      {"manifest", manifest.ToJson()},
      {"estimates", estimates},
      {"evaluation", ToJson(Evaluate(records, values, Ranks(seq, ctx.window)))},
      {"regret",
       {{"window", {ctx.window.first, ctx.window.last}},
        {"bidders", bidders},
        {"groups", group_json},
        {"momentary", momentary}}},
      {"welfare", welfare},
  };
  WriteFileAtomic(args.Str("out"), doc.dump(2) + "\n");
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n' || c == '\r') {
      out += ' ';
      continue;
    }
    out += c;
  }
  return out;
}

}  // namespace

std::vector<std::string> Commands() {
  std::vector<std::string> out;
  for (const auto& [name, specs] : Table()) out.push_back(name);
  return out;
}

const std::vector<OptionSpec>& CommandOptions(std::string_view command) {
  auto it = Table().find(command);
  if (it == Table().end()) {
    Invalid("unknown command '" + std::string(command) + "'");
  }
  return it->second;
}

std::string RunManifest::CommentBlock() const {
  std::string out = "# adregret-manifest version=" + std::string(kVersion) + "\n";
  out += "# command=" + command + "\n";
  for (const auto& [key, value] : options) {
    out += "# " + key + "=" + value + "\n";
  }
  return out;
}

nlohmann::json RunManifest::ToJson() const {
  return {{"version", kVersion}, {"command", command}, {"options", options}};
}

RunManifest ExtractManifest(const std::string& text) {
  RunManifest m;
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && text[start] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
      const auto& man = doc.at("manifest");
      m.command = man.at("command").get<std::string>();
      m.options = man.at("options").get<Options>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, std::string("no manifest in JSON: ") + e.what());
    }
    return m;
  }
  std::istringstream in(text);
  std::string line;
  bool header = false;
  while (std::getline(in, line) && line.rfind("#", 0) == 0) {
    if (line.rfind("# adregret-manifest", 0) == 0) {
      header = true;
      continue;
    }
    const auto eq = line.find('=');
    if (!header || line.size() < 2 || eq == std::string::npos) continue;
    const std::string key = line.substr(2, eq - 2);
    const std::string value = line.substr(eq + 1);
    if (key == "command") {
      m.command = value;
    } else {
      m.options[key] = value;
    }
  }
  if (!header || m.command.empty()) {
    throw Error(ErrorCode::kParse, "no manifest found");
  }
  return m;
}

RunManifest ResolveManifest(const std::string& command, const Options& flags,
                            const char* seed_env) {
  const auto& specs = CommandOptions(command);
  RunManifest m;
  m.command = command;
  for (const auto& s : specs) m.options[s.key] = s.default_value;
  if (m.options.count("seed") && seed_env != nullptr && *seed_env != '\0') {
    ToInt<std::uint64_t>(kSeedEnv, seed_env);
    m.options["seed"] = seed_env;
  }
  auto config = flags.find("config");
  if (config != flags.end() && !config->second.empty()) {
    for (const auto& [k, v] : ReadConfig(config->second, specs)) {
      m.options[k] = v;
    }
  }
  for (const auto& [k, v] : flags) {
    if (!m.options.count(k)) Invalid("unknown option '" + k + "' for " + command);
    m.options[k] = v;
  }
  for (const auto& s : specs) {
    if (s.required && m.options[s.key].empty()) {
      Invalid("missing required option --" + s.key);
    }
  }
  for (const auto& key : InputKeys(command)) {
    auto it = m.options.find(key);
    if (it != m.options.end() && !it->second.empty()) {
      m.options[key + kHashSuffix] = Fnv1a(ReadFile(it->second));
    }
  }
  return m;
}

void RunCommand(const RunManifest& manifest, std::ostream& log) {
  CheckInputs(manifest);
  if (manifest.command == "simulate") return Simulate(manifest, log);
  if (manifest.command == "regret") return RegretCommand(manifest, log);
  if (manifest.command == "estimate") return Estimate(manifest, log);
  if (manifest.command == "evaluate") return EvaluateCommand(manifest, log);
  if (manifest.command == "report") return Report(manifest, log);
  Invalid("unknown command '" + manifest.command + "'");
}

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"adregret: valuation estimation from position-auction bid logs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::map<std::string, bool>> switches;
  std::map<std::string, CLI::App*> subs;
  const std::map<std::string, std::string> about = {
      {"simulate", "run a synthetic session; writes bids, values, outcomes"},
      {"regret", "regret curves, totals, momentary and welfare series"},
      {"estimate", "estimate valuations from a bid log (never reads values)"},
      {"evaluate", "score estimates against true values"},
      {"report", "everything above bundled into one JSON document"},
  };
  for (const auto& name : Commands()) {
    CLI::App* sub = app.add_subcommand(name, about.at(name));
    subs[name] = sub;
    for (const auto& s : CommandOptions(name)) {
      std::string help = s.help;
      if (!s.flag && !s.default_value.empty()) {
        help += " [default: " + s.default_value + "]";
      }
      if (s.required) help += " (required)";
      if (s.flag) {
        sub->add_flag("--" + s.key, switches[name][s.key], help);
      } else {
        sub->add_option("--" + s.key, values[name][s.key], help);
      }
    }
  }
  std::string rerun_from;
  CLI::App* rerun = app.add_subcommand(
      "rerun", "replay the manifest embedded in an output file");
  rerun->add_option("--from", rerun_from, "output file carrying a manifest")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: code=usage message=\"" << Escape(e.what()) << "\"\n";
    return 2;
  }

  try {
    if (rerun->parsed()) {
      RunCommand(ExtractManifest(ReadFile(rerun_from)), err);
      return 0;
    }
    for (const auto& [name, sub] : subs) {
      if (!sub->parsed()) continue;
      Options flags;
      for (const auto& s : CommandOptions(name)) {
        if (sub->count("--" + s.key) == 0) continue;
        flags[s.key] = s.flag ? (switches[name][s.key] ? "true" : "false")
                              : values[name][s.key];
      }
      RunCommand(ResolveManifest(name, flags, std::getenv(kSeedEnv)), err);
    }
    return 0;
  } catch (const Error& e) {
    err << "error: code=" << ErrorCodeName(e.code()) << " message=\""
        << Escape(e.what()) << "\"\n";
  } catch (const std::exception& e) {
    err << "error: code=internal message=\"" << Escape(e.what()) << "\"\n";
  }
  return 1;
}

}  // namespace adregret::cli
