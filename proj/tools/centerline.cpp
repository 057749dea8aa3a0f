// centerline: command-line front end for the centering engine.
//
//   centerline evaluate --corpus C --kb K --strategy naive,functional [--mode gold|system]
//                       [--cost-rule definitional|table] [--format text|json-like|csv] [--trace DIR]
//   centerline trace    --corpus C --kb K --strategy S --discourse ID [--mode ...] [--format ...]
//   centerline validate --corpus C --kb K
//
// Exit codes: 0 success, 1 validation error, 2 usage error.

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "centerline/centerline.hpp"

namespace {

namespace cl = centerline;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cl::UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool use_color() {
  return std::getenv("CENTERLINE_NO_COLOR") == nullptr && isatty(STDOUT_FILENO) != 0;
}

template <typename E>
E parse_choice(const std::string& text, const char* option) {
  auto v = cl::parse_enum<E>(text);
  if (!v) {
    throw cl::UsageError(std::string(option) + ": unknown value '" + text + "' (expected one of " +
                         cl::enum_choices<E>() + ")");
  }
  return *v;
}

std::vector<cl::Strategy> parse_strategies(const std::string& list) {
  std::vector<cl::Strategy> out;
  std::istringstream in(list);
  for (std::string name; std::getline(in, name, ',');) {
    if (name.empty()) continue;
    out.push_back(parse_choice<cl::Strategy>(name, "--strategy"));
  }
  if (out.empty()) throw cl::UsageError("--strategy: at least one strategy is required");
  return out;
}

struct Inputs {
  std::vector<cl::Discourse> corpus;
  cl::KnowledgeBase kb;
};

Inputs load(const std::string& corpus_path, const std::string& kb_path) {
  Inputs in;
  try {
    in.corpus = cl::parse_corpus_unchecked(read_file(corpus_path));
    in.kb = cl::parse_kb(read_file(kb_path));
  } catch (const cl::CorpusError& e) {
    throw ValidationFailure(corpus_path + ": " + e.what());
  } catch (const cl::KnowledgeError& e) {
    throw ValidationFailure(kb_path + ": " + e.what());
  }
  return in;
}

struct CommonOptions {
  std::string corpus;
  std::string kb;
  std::string mode = "gold";
};

int run_validate(const CommonOptions& opts) {
  Inputs in = load(opts.corpus, opts.kb);
  std::vector<cl::Diagnostic> all;
  for (const auto& d : in.corpus) {
    for (auto& diag : cl::validate_discourse(d)) all.push_back(std::move(diag));
    for (auto& diag : cl::validate_concepts(d, in.kb)) all.push_back(std::move(diag));
  }
  for (const auto& diag : all) std::cout << diag.to_string() << "\n";
  std::size_t errors = 0;
  for (const auto& diag : all) errors += diag.severity == cl::Severity::Error;
  std::cout << in.corpus.size() << " discourse(s), " << in.kb.concepts().size() << " concept(s), "
            << errors << " error(s), " << all.size() - errors << " warning(s)\n";
  return errors ? kExitValidation : kExitOk;
}

void write_traces(const Inputs& in, const std::vector<cl::Strategy>& strategies, cl::ResolutionMode mode,
                  const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& d : in.corpus) {
    if (cl::has_errors(cl::validate_discourse(d))) continue;
    for (cl::Strategy s : strategies) {
      cl::CenteringTrace trace;
      try {
        trace = cl::run_discourse(d, in.kb, s, mode);
      } catch (const std::exception&) {
        continue;  // already listed among the report's excluded discourses
      }
      std::ofstream out(dir / (d.id + "." + std::string(cl::name_of(s)) + ".json"));
      out << cl::trace_to_json(trace).dump(2) << "\n";
    }
  }
}

int run_evaluate(const CommonOptions& opts, const std::string& strategy_list, const std::string& rule_name,
                 const std::string& format_name, const std::string& trace_dir) {
  auto strategies = parse_strategies(strategy_list);
  auto mode = parse_choice<cl::ResolutionMode>(opts.mode, "--mode");
  auto rule = parse_choice<cl::CostRule>(rule_name, "--cost-rule");
  auto format = parse_choice<cl::ReportFormat>(format_name, "--format");
  Inputs in = load(opts.corpus, opts.kb);

  auto report = cl::evaluate(in.corpus, in.kb, strategies, mode, rule);
  std::cout << cl::render_report(report, format, use_color());
  if (!trace_dir.empty()) write_traces(in, report.strategies, mode, trace_dir);
  if (!report.failures.empty()) {
    for (const auto& f : report.failures) std::cerr << f.to_string() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

int run_trace(const CommonOptions& opts, const std::string& strategy_name, const std::string& discourse_id,
              const std::string& format_name) {
  auto strategy = parse_choice<cl::Strategy>(strategy_name, "--strategy");
  auto mode = parse_choice<cl::ResolutionMode>(opts.mode, "--mode");
  auto format = parse_choice<cl::ReportFormat>(format_name, "--format");
  if (format == cl::ReportFormat::Csv) throw cl::UsageError("--format: trace supports text and json-like");
  Inputs in = load(opts.corpus, opts.kb);

  for (const auto& d : in.corpus) {
    if (d.id != discourse_id) continue;
    auto diagnostics = cl::validate_discourse(d);
    if (cl::has_errors(diagnostics)) {
      for (const auto& diag : diagnostics) std::cerr << diag.to_string() << "\n";
      return kExitValidation;
    }
    cl::CenteringTrace trace;
    try {
      trace = cl::run_discourse(d, in.kb, strategy, mode);
    } catch (const std::exception& e) {
      throw ValidationFailure(e.what());
    }
    if (format == cl::ReportFormat::Text) {
      std::cout << cl::render_trace_text(trace);
    } else {
      std::cout << cl::trace_to_json(trace).dump(2) << "\n";
    }
    return kExitOk;
  }
  throw cl::UsageError("--discourse: no discourse with id '" + discourse_id + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"centerline: centering-model evaluation of annotated discourse"};
  app.require_subcommand(1);

  CommonOptions common;
  auto add_common = [&common](CLI::App* sub) {
    sub->add_option("--corpus", common.corpus, "Annotated corpus file")->required();
    sub->add_option("--kb", common.kb, "Knowledge base file")->required();
  };

  std::string strategies, rule = "definitional", format = "text", trace_dir, discourse, trace_strategy;
  std::string trace_format = "text";

  auto* evaluate = app.add_subcommand("evaluate", "Count transitions and pair costs per strategy");
  add_common(evaluate);
  evaluate->add_option("--strategy", strategies, "Comma-separated strategies")->required();
  evaluate->add_option("--mode", common.mode, "gold or system links");
  evaluate->add_option("--cost-rule", rule, "definitional or table");
  evaluate->add_option("--format", format, "text, json-like or csv");
  evaluate->add_option("--trace", trace_dir, "Write per-discourse traces to this directory");

  auto* trace = app.add_subcommand("trace", "Print the per-utterance Cb/Cf trace of one discourse");
  add_common(trace);
  trace->add_option("--strategy", trace_strategy, "Ranking strategy")->required();
  trace->add_option("--discourse", discourse, "Discourse id")->required();
  trace->add_option("--mode", common.mode, "gold or system links");
  trace->add_option("--format", trace_format, "text or json-like");

  auto* validate = app.add_subcommand("validate", "Check corpus and knowledge base");
  add_common(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*evaluate) return run_evaluate(common, strategies, rule, format, trace_dir);
    if (*trace) return run_trace(common, trace_strategy, discourse, trace_format);
    if (*validate) return run_validate(common);
  } catch (const cl::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
