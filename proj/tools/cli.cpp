#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "fink/fink.hpp"

namespace fink::cli {
namespace {

using Json = nlohmann::json;

struct Common {
  std::optional<int> k;
  std::optional<std::size_t> horizon;
  unsigned cap = 24;
  std::optional<std::uint64_t> seed;
  std::string format = "text";
};

struct Inputs {
  std::string seq;
  std::string block;
  std::string witness;
  std::string first;
  std::string second;
  std::string p;
  std::string q;
  bool starred = false;
  std::size_t tail = 1;
  std::size_t cycles = 1;
  std::vector<std::string> members;
};

struct Result {
  int exit_code = kSuccess;
  std::string text;
  Json json = Json::object();
};

Json valuation_json(std::optional<std::size_t> value) {
  return value ? Json(*value) : Json(nullptr);
}

class Session {
 public:
  explicit Session(const Common& common) : common_(common) {
    limits_.cap_bits = common.cap;
  }

  int level_or(int fallback) const {
    if (common_.k && *common_.k != fallback) {
      throw Error(ErrorCode::mismatched_level,
                  "--k " + std::to_string(*common_.k) +
                      " disagrees with input level " +
                      std::to_string(fallback));
    }
    return fallback;
  }

  int required_level(const std::string& why) const {
    if (!common_.k) {
      throw Error(ErrorCode::invalid_argument, "--k is required " + why);
    }
    return *common_.k;
  }

  BlockSequence sequence(const std::string& path) const {
    auto seq = load_sequence(path);
    level_or(seq.level());
    return seq;
  }

  Subblock block(const std::string& text, int level) const {
    if (text.rfind("k=", 0) == 0) {
      auto parsed = parse_block(text);
      if (parsed.level() != level) {
        throw Error(ErrorCode::mismatched_level,
                    "block level " + std::to_string(parsed.level()) +
                        " differs from sequence level " +
                        std::to_string(level));
      }
      return parsed;
    }
    return parse_block_body(level, text);
  }

  // A builtin name, an inline stream spec, a stream spec file, or a
  // sequence file.
  SequenceStream stream(const std::string& text) const {
    if (const auto family = builtin_from_name(text)) {
      return SequenceStream::builtin(*family,
                                     required_level("for builtin streams"));
    }
    if (text.find("kind=") != std::string::npos) {
      return checked(parse_stream_spec(text, common_.k));
    }
    std::ifstream in(text);
    if (!in) {
      throw Error(ErrorCode::invalid_argument,
                  "'" + text + "' is neither a builtin stream nor a readable file");
    }
    std::string line;
    while (std::getline(in, line)) {
      const auto start = line.find_first_not_of(" \t\r");
      if (start == std::string::npos || line[start] == '#') continue;
      if (line.compare(start, 5, "kind=") == 0) {
        return checked(parse_stream_spec(line.substr(start), common_.k));
      }
      break;
    }
    return SequenceStream::explicit_list(sequence(text));
  }

  BlockSequence truncated(const SequenceStream& stream) const {
    if (common_.horizon) return stream.truncate(*common_.horizon);
    const auto length = stream.length();
    if (!length) {
      throw Error(ErrorCode::invalid_argument,
                  "--horizon is required for " + stream.describe());
    }
    return stream.truncate(kMaxPosition);
  }

  std::size_t horizon() const {
    if (!common_.horizon) {
      throw Error(ErrorCode::invalid_argument, "--horizon is required");
    }
    return *common_.horizon;
  }

  const EnumerationLimits& limits() const { return limits_; }

 private:
  SequenceStream checked(SequenceStream stream) const {
    level_or(stream.level());
    return stream;
  }

  const Common& common_;
  EnumerationLimits limits_;
};

struct Pair {
  BlockSequence first;
  BlockSequence second;
};

Pair load_pair(const Session& session, const Inputs& in) {
  auto first = session.truncated(session.stream(in.first));
  auto second = session.truncated(session.stream(in.second));
  if (first.level() != second.level()) {
    throw Error(ErrorCode::mismatched_level,
                "--P and --Q have different levels");
  }
  return {std::move(first), std::move(second)};
}

std::optional<CommonElement> locate(const Session& session, const Pair& pair,
                                    const std::string& text) {
  auto value = session.block(text, pair.first.level());
  auto in_first = is_member(value, pair.first, false);
  auto in_second = is_member(value, pair.second, false);
  if (!in_first || !in_second) return std::nullopt;
  return CommonElement{std::move(value), std::move(*in_first),
                       std::move(*in_second)};
}

std::string common_line(const CommonElement& e) {
  return to_literal(e.value) + " " + to_string(e.in_first) + " | " +
         to_string(e.in_second);
}

Json common_json(const CommonElement& e) {
  return {{"value", to_literal(e.value)},
          {"in_first", to_string(e.in_first)},
          {"in_second", to_string(e.in_second)}};
}

Result not_common(const std::string& text) {
  Result r;
  r.exit_code = kNegative;
  r.text = "no";
  r.json = {{"common", false}, {"block", text}};
  return r;
}

Result do_eval(const Session& s, const Inputs& in) {
  const auto seq = s.sequence(in.seq);
  const auto combination =
      parse_combination(in.witness, seq.level(), in.starred);
  const auto value = evaluate(seq, combination);
  Result r;
  r.text = to_literal(value);
  r.json = {{"value", r.text}, {"witness", to_string(combination)}};
  return r;
}

Result do_member(const Session& s, const Inputs& in) {
  const auto seq = s.sequence(in.seq);
  const auto value = s.block(in.block, seq.level());
  const auto witness = is_member(value, seq, in.starred);
  Result r;
  r.json = {{"block", to_literal(value)}, {"member", witness.has_value()}};
  if (witness) {
    r.text = "yes " + to_string(*witness);
    r.json["witness"] = to_string(*witness);
  } else {
    r.exit_code = kNegative;
    r.text = "no";
  }
  return r;
}

Result do_span(const Session& s, const Inputs& in) {
  const auto seq = s.sequence(in.seq);
  const auto span = enumerate_span(seq, in.starred, s.limits());
  Result r;
  Json elements = Json::array();
  for (const auto& e : span.elements) {
    r.text += to_literal(e.value) + " " + to_string(e.witness) + "\n";
    elements.push_back(
        {{"value", to_literal(e.value)}, {"witness", to_string(e.witness)}});
  }
  if (span.contains_empty) {
    r.text += to_literal(Subblock::empty(seq.level())) + "\n";
  }
  r.json = {{"elements", elements}, {"contains_empty", span.contains_empty}};
  return r;
}

Result do_intersect(const Session& s, const Inputs& in) {
  const auto pair = load_pair(s, in);
  const auto common = intersect_spans(pair.first, pair.second, s.limits());
  Result r;
  Json elements = Json::array();
  for (const auto& e : common) {
    r.text += common_line(e) + "\n";
    elements.push_back(common_json(e));
  }
  if (common.empty()) {
    r.exit_code = kNegative;
    r.text = "none";
  }
  r.json = {{"elements", elements}};
  return r;
}

Result do_valuation(const Session& s, const Inputs& in) {
  HorizonValuation value;
  if (!in.seq.empty()) {
    const auto seq = s.sequence(in.seq);
    value = valuation(seq.blocks());
  } else if (!in.first.empty()) {
    const auto pair = load_pair(s, in);
    const auto common = intersect_spans(pair.first, pair.second, s.limits());
    value = valuation(common);
  } else {
    throw Error(ErrorCode::invalid_argument, "give --seq or --P with --Q");
  }
  Result r;
  r.text = "F=" + to_string(value.value) +
           " elements=" + std::to_string(value.element_count);
  r.json = {{"F", valuation_json(value.value)},
            {"elements", value.element_count}};
  return r;
}

Result do_graph(const Session& s, const Inputs& in) {
  const auto pair = load_pair(s, in);
  const auto element = locate(s, pair, in.block);
  if (!element) return not_common(in.block);
  const auto graph = build_graph(element->value, element->in_first,
                                 element->in_second, pair.first, pair.second);
  Result r;
  r.text = to_text(graph);
  Json edges = Json::array();
  for (const auto& [a, b] : graph.edges) edges.push_back({a, b});
  r.json = {{"left", graph.left},
            {"right", graph.right},
            {"edges", edges},
            {"connected", graph.is_connected()}};
  return r;
}

Result do_intertwined(const Session& s, const Inputs& in) {
  const auto pair = load_pair(s, in);
  const auto element = locate(s, pair, in.block);
  if (!element) return not_common(in.block);
  const bool yes = is_intertwined(element->value, element->in_first,
                                  element->in_second, pair.first, pair.second);
  Result r;
  r.exit_code = yes ? kSuccess : kNegative;
  r.text = yes ? "yes" : "no";
  r.json = {{"intertwined", yes}, {"element", common_json(*element)}};
  return r;
}

Result do_extract(const Session& s, const Inputs& in) {
  const auto pair = load_pair(s, in);
  const auto found = extract_intertwined(pair.first, pair.second, s.limits());
  Result r;
  if (!found) {
    r.exit_code = kNegative;
    r.text = "none";
    r.json = {{"found", false}};
    return r;
  }
  r.text = to_literal(found->block.value) +
           " N=" + std::to_string(found->prefix_length) +
           " splits=" + std::to_string(found->splits) + " " +
           to_string(found->block.in_first) + " | " +
           to_string(found->block.in_second);
  r.json = {{"found", true},
            {"element", common_json(found->block)},
            {"N", found->prefix_length},
            {"splits", found->splits}};
  return r;
}

Result do_split(const Session& s, const Inputs& in) {
  const auto pair = load_pair(s, in);
  const auto p = locate(s, pair, in.p);
  const auto q = locate(s, pair, in.q);
  if (!p || !q) return not_common(!p ? in.p : in.q);
  const auto split =
      star_split(p->value, p->in_first, p->in_second, q->value, q->in_first,
                 q->in_second, pair.first, pair.second);
  Result r;
  r.text = "stacked=" + to_literal(split.stacked) +
           " lower=" + to_literal(split.lower) +
           " upper=" + to_literal(split.upper);
  r.json = {{"stacked", to_literal(split.stacked)},
            {"lower", to_literal(split.lower)},
            {"upper", to_literal(split.upper)}};
  return r;
}

Result do_small(const Session& s, const Inputs& in) {
  const auto first = s.stream(in.first);
  const auto second = s.stream(in.second);
  const auto certificate =
      smallness_check(first, second, in.tail, s.horizon(), s.limits());
  Result r;
  r.text = std::string(to_string(certificate.verdict));
  r.json = {{"certificate", to_string(certificate)},
            {"verdict", to_string(certificate.verdict)},
            {"n", certificate.tail_index},
            {"horizon", certificate.horizon}};
  if (certificate.witness) {
    r.exit_code = kNegative;
    r.text += " " + common_line(*certificate.witness);
    r.json["witness"] = common_json(*certificate.witness);
  }
  return r;
}

Result do_diag(const Session& s, const Inputs& in) {
  std::vector<SequenceStream> members;
  for (const auto& m : in.members) members.push_back(s.stream(m));
  const auto family =
      validate_family(std::move(members), in.tail, s.horizon(), s.limits());
  const auto trace = run_diagonalization(family, in.cycles);
  Result r;
  Json steps = Json::array();
  for (const auto& step : trace.steps) {
    r.text += to_string(step) + "\n";
    Json checks = Json::array();
    for (const auto& c : step.checks) {
      checks.push_back({{"member", c.member},
                        {"before", valuation_json(c.before.value)},
                        {"after", valuation_json(c.after.value)}});
    }
    steps.push_back(
        {{"step", step.step},
         {"q", to_literal(step.choice.block)},
         {"source", step.choice.source},
         {"position", step.choice.position},
         {"J", step.choice.between ? Json(*step.choice.between) : Json(nullptr)},
         {"checks", checks}});
  }
  r.json = {{"steps", steps}};
  return r;
}

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--k", common.k, "Level k (1..255)")
      ->check(CLI::Range(1, 255));
  sub->add_option("--horizon", common.horizon, "Support horizon H");
  sub->add_option("--cap", common.cap,
                  "Enumeration cap as log2 of (k+1)^N")
      ->capture_default_str();
  sub->add_option("--seed", common.seed,
                  "Accepted for interface stability; commands are deterministic");
  sub->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

void add_pair(CLI::App* sub, Inputs& in) {
  sub->add_option("--P", in.first,
                  "First stream: builtin name, stream spec, or file")
      ->required();
  sub->add_option("--Q", in.second,
                  "Second stream: builtin name, stream spec, or file")
      ->required();
}

std::string ensure_newline(std::string text) {
  if (text.empty() || text.back() != '\n') text += '\n';
  return text;
}

std::string describe_error(const Error& e) {
  std::string out = "error: " + std::string(code_name(e.code()));
  if (const auto* parse = dynamic_cast<const ParseError*>(&e)) {
    if (parse->line() > 0) {
      out += " at line " + std::to_string(parse->line()) + ", column " +
             std::to_string(parse->column());
    }
  }
  return out + ": " + e.what() + "\n";
}

}  // namespace

Outcome run(const std::vector<std::string>& args) {
  CLI::App app{"Block algebra, spans and diagonalization over FIN_k", "fink"};
  app.require_subcommand(1);

  Common common;
  Inputs in;
  using Handler = Result (*)(const Session&, const Inputs&);
  std::vector<std::pair<CLI::App*, Handler>> handlers;
  const auto command = [&](const char* name, const char* help,
                           Handler handler) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, common);
    handlers.emplace_back(sub, handler);
    return sub;
  };

  auto* eval = command("eval", "Evaluate a witness over a sequence", do_eval);
  eval->add_option("--seq", in.seq, "Sequence file")->required();
  eval->add_option("--witness", in.witness, "Witness such as '0^0 + 1^1'")
      ->required();
  eval->add_flag("--starred", in.starred, "Allow a positive minimum exponent");

  auto* member = command("member", "Decide span membership", do_member);
  member->add_option("--seq", in.seq, "Sequence file")->required();
  member->add_option("--block", in.block, "Block body or literal")->required();
  member->add_flag("--starred", in.starred, "Use the starred span");

  auto* span = command("span", "Enumerate a span", do_span);
  span->add_option("--seq", in.seq, "Sequence file")->required();
  span->add_flag("--starred", in.starred, "Enumerate the starred span");

  add_pair(command("intersect", "Intersect two spans", do_intersect), in);

  auto* val = command("valuation",
                      "F of a sequence's blocks or of a span intersection",
                      do_valuation);
  auto* seq_opt = val->add_option("--seq", in.seq, "Sequence file");
  auto* p_opt = val->add_option("--P", in.first, "First stream");
  auto* q_opt = val->add_option("--Q", in.second, "Second stream");
  seq_opt->excludes(p_opt)->excludes(q_opt);
  p_opt->needs(q_opt);
  q_opt->needs(p_opt);

  for (const auto& [name, help, handler] :
       {std::tuple{"graph", "Decomposition graph of a common block", do_graph},
        std::tuple{"intertwined", "Test whether a common block is intertwined",
                   do_intertwined}}) {
    auto* sub = command(name, help, handler);
    add_pair(sub, in);
    sub->add_option("--block", in.block, "Block body or literal")->required();
  }

  add_pair(command("extract", "Extract an intertwined common block",
                   do_extract),
           in);

  auto* split = command("split", "Star-split q around intertwined p", do_split);
  add_pair(split, in);
  split->add_option("--p", in.p, "Intertwined common block")->required();
  split->add_option("--q", in.q, "Common block")->required();

  auto* small = command("small", "Horizon smallness certificate", do_small);
  add_pair(small, in);
  small->add_option("--n", in.tail, "Tail index of the first stream")
      ->capture_default_str();

  auto* diag = command("diag", "Diagonalize against a family", do_diag);
  diag->add_option("--member", in.members, "Family member stream (repeat)")
      ->required();
  diag->add_option("--n", in.tail, "Tail index for the pairwise certificates")
      ->capture_default_str();
  diag->add_option("--cycles", in.cycles, "Passes over the family")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  Outcome outcome;
  std::ostringstream out;
  std::ostringstream err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    outcome.exit_code = code == 0 ? kSuccess : kFailure;
    outcome.out = out.str();
    outcome.err = err.str();
    return outcome;
  }

  try {
    const Session session(common);
    for (const auto& [sub, handler] : handlers) {
      if (!sub->parsed()) continue;
      const auto result = handler(session, in);
      outcome.exit_code = result.exit_code;
      outcome.out = ensure_newline(
          common.format == "json" ? result.json.dump() : result.text);
    }
  } catch (const Error& e) {
    outcome.exit_code = kFailure;
    outcome.err = describe_error(e);
  }
  return outcome;
}

int dispatch(int argc, const char* const* argv) {
  const std::vector<std::string> args(argv + std::min(argc, 1), argv + argc);
  const auto outcome = run(args);
  std::cout << outcome.out << std::flush;
  std::cerr << outcome.err << std::flush;
  return outcome.exit_code;
}

}  // namespace fink::cli
