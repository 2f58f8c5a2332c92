#include "xot/errors.hpp"
#include "xot/harness.hpp"

#include "json.hpp"

#include <fmt/format.h>

#include <sstream>

namespace xot {

using nlohmann::json;

bool ProblemRecord::any_solved() const {
  return std::find(solved.begin(), solved.end(), true) != solved.end();
}

Aggregates aggregate(const std::vector<ProblemRecord>& records) {
  Aggregates a;
  a.problems = records.size();
  if (records.empty())
    return a;
  double acc = 0, multi = 0, sols = 0, llm = 0, f = 0;
  for (const auto& r : records) {
    acc += r.any_solved() ? 1 : 0;
    if (!r.solved.empty())
      multi += static_cast<double>(std::count(r.solved.begin(), r.solved.end(), true)) /
               static_cast<double>(r.solved.size());
    sols += static_cast<double>(r.solved.size());
    llm += static_cast<double>(r.llm_calls);
    f += static_cast<double>(r.f_calls);
    a.erroneous_reviews += r.erroneous_reviews;
    a.repaired += r.repaired;
  }
  const auto n = static_cast<double>(records.size());
  a.acc = 100.0 * acc / n;
  a.multi_acc = 100.0 * multi / n;
  a.mean_solutions = sols / n;
  a.mean_llm_calls = llm / n;
  a.mean_f_calls = f / n;
  if (a.erroneous_reviews > 0)
    a.revision_success = 100.0 * static_cast<double>(a.repaired) / static_cast<double>(a.erroneous_reviews);
  return a;
}

namespace {

constexpr const char* kHeader = "{:<18} {:>8} {:>12} {:>6} {:>12} {:>12} {:>20}\n";

std::string method_name(const EvalReport& r) {
  return std::string(to_string(r.mode)) + (r.multi ? "+multi" : "");
}

json record_json(const ProblemRecord& r) {
  return {{"id", r.id},
          {"solved", r.solved},
          {"moves", r.moves},
          {"llm_calls", r.llm_calls},
          {"f_calls", r.f_calls},
          {"revision_rounds", r.revision_rounds},
          {"erroneous_reviews", r.erroneous_reviews},
          {"repaired", r.repaired},
          {"error", r.error}};
}

} // namespace

std::string report_text(const EvalReport& r) {
  std::string out = fmt::format("task: {}  mode: {}  multi: {}  seed: {}  problems: {}\n",
                                to_string(r.task), to_string(r.mode), r.multi ? "true" : "false",
                                r.seed, r.aggregates.problems);
  out += fmt::format(kHeader, "Method", "Acc(%)", "MultiAcc(%)", "#Sol", "LLM invoked",
                     "f_theta invoked", "Revision success(%)");
  if (r.aggregates.problems == 0)
    return out;
  const auto& a = r.aggregates;
  const std::string rev = a.erroneous_reviews ? fmt::format("{:.2f}", a.revision_success) : "-";
  out += fmt::format(kHeader, method_name(r), fmt::format("{:.2f}", a.acc),
                     fmt::format("{:.2f}", a.multi_acc), fmt::format("{:.2f}", a.mean_solutions),
                     fmt::format("{:.2f}", a.mean_llm_calls), fmt::format("{:.2f}", a.mean_f_calls), rev);
  return out;
}

Aggregates aggregates_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  Aggregates a;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.rfind("task:", 0) == 0) {
      const auto at = line.find("problems:");
      if (at != std::string::npos)
        a.problems = std::stoul(line.substr(at + 9));
      continue;
    }
    if (line.rfind("Method", 0) == 0) {
      header_seen = true;
      continue;
    }
    if (!header_seen || line.empty())
      continue;
    std::istringstream row(line);
    std::string method, rev;
    if (!(row >> method >> a.acc >> a.multi_acc >> a.mean_solutions >> a.mean_llm_calls >>
          a.mean_f_calls >> rev))
      throw ParseError(0, "malformed report row: " + line);
    a.revision_success = rev == "-" ? 0.0 : std::stod(rev);
    break;
  }
  if (!header_seen)
    throw ParseError(0, "report header not found");
  return a;
}

std::string report_json(const EvalReport& r) {
  json records = json::array();
  for (const auto& rec : r.records)
    records.push_back(record_json(rec));
  const auto& a = r.aggregates;
  json j{{"task", to_string(r.task)},
         {"mode", to_string(r.mode)},
         {"multi", r.multi},
         {"seed", r.seed},
         {"config", r.config},
         {"records", records},
         {"aggregates",
          {{"problems", a.problems},
           {"acc", a.acc},
           {"multi_acc", a.multi_acc},
           {"mean_solutions", a.mean_solutions},
           {"mean_llm_calls", a.mean_llm_calls},
           {"mean_f_calls", a.mean_f_calls},
           {"revision_success", a.revision_success},
           {"erroneous_reviews", a.erroneous_reviews},
           {"repaired", a.repaired}}}};
  return j.dump();
}

EvalReport report_from_json(std::string_view text) {
  EvalReport r;
  try {
    const auto j = json::parse(text);
    r.task = parse_task(j.at("task").get<std::string>());
    r.mode = parse_eval_mode(j.at("mode").get<std::string>());
    r.multi = j.at("multi").get<bool>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.config = j.at("config").get<std::map<std::string, std::string>>();
    for (const auto& x : j.at("records")) {
      ProblemRecord rec;
      rec.id = x.at("id").get<std::string>();
      rec.solved = x.at("solved").get<std::vector<bool>>();
      rec.moves = x.at("moves").get<std::vector<std::string>>();
      rec.llm_calls = x.at("llm_calls").get<std::size_t>();
      rec.f_calls = x.at("f_calls").get<std::size_t>();
      rec.revision_rounds = x.at("revision_rounds").get<int>();
      rec.erroneous_reviews = x.at("erroneous_reviews").get<std::size_t>();
      rec.repaired = x.at("repaired").get<std::size_t>();
      rec.error = x.at("error").get<std::string>();
      r.records.push_back(std::move(rec));
    }
    const auto& a = j.at("aggregates");
    r.aggregates.problems = a.at("problems").get<std::size_t>();
    r.aggregates.acc = a.at("acc").get<double>();
    r.aggregates.multi_acc = a.at("multi_acc").get<double>();
    r.aggregates.mean_solutions = a.at("mean_solutions").get<double>();
    r.aggregates.mean_llm_calls = a.at("mean_llm_calls").get<double>();
    r.aggregates.mean_f_calls = a.at("mean_f_calls").get<double>();
    r.aggregates.revision_success = a.at("revision_success").get<double>();
    r.aggregates.erroneous_reviews = a.at("erroneous_reviews").get<std::size_t>();
    r.aggregates.repaired = a.at("repaired").get<std::size_t>();
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("report JSON: ") + e.what());
  }
  return r;
}

} // namespace xot
