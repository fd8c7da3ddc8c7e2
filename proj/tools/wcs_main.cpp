#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "wcs/commands.hpp"
#include "wcs/config.hpp"
#include "wcs/error.hpp"

namespace {

struct Options {
  std::string config_file;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string frequency_list, dictionary, corpus, targets, contexts, oracle, tokenizer, lexicon;
  std::vector<std::string> traces;
  std::optional<std::size_t> n_words, n_contexts, threads;
  bool allow_short = false;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("-c,--config", o.config_file, "key = value configuration file");
  cmd->add_option("--set", o.sets, "override a configuration key (key=value), repeatable");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("-o,--out", o.out, "output directory");
  cmd->add_option("--threads", o.threads, "worker threads (0: all cores)");
}

wcs::RunConfig build_config(const Options& o) {
  wcs::ConfigMap values;
  if (!o.config_file.empty()) values = wcs::load_config_file(o.config_file);
  auto put = [&](const char* key, const std::string& v) {
    if (!v.empty()) values[key] = v;
  };
  put("frequency_list", o.frequency_list);
  put("dictionary", o.dictionary);
  put("corpus_dir", o.corpus);
  put("targets", o.targets);
  put("contexts", o.contexts);
  put("oracle", o.oracle);
  put("tokenizer", o.tokenizer);
  put("lexicon", o.lexicon);
  put("out", o.out);
  if (!o.traces.empty()) {
    std::string joined;
    for (const auto& t : o.traces) joined += (joined.empty() ? "" : ",") + t;
    values["traces"] = joined;
  }
  if (o.seed) values["seed"] = std::to_string(*o.seed);
  if (o.n_words) values["n_words"] = std::to_string(*o.n_words);
  if (o.n_contexts) values["n_contexts"] = std::to_string(*o.n_contexts);
  if (o.threads) values["threads"] = std::to_string(*o.threads);
  if (o.allow_short) values["allow_short"] = "true";
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw wcs::Error(wcs::ErrorKind::validation, fmt::format("--set expects key=value, got '{}'", kv));
    }
    values[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return wcs::make_run_config(values);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word coverage audit of truncation samplers"};
  app.require_subcommand(1);
  Options o;

  auto* select = app.add_subcommand("select-words", "sample target words from a frequency band");
  add_common(select, o);
  select->add_option("--frequency-list", o.frequency_list, "word<TAB>count list, descending");
  select->add_option("--dictionary", o.dictionary, "one word per line");
  select->add_option("--n-words", o.n_words, "number of target words");

  auto* extract = app.add_subcommand("extract-contexts", "find corpus contexts for each target word");
  add_common(extract, o);
  extract->add_option("--corpus", o.corpus, "directory of *.txt documents");
  extract->add_option("--targets", o.targets, "targets.json from select-words");
  extract->add_option("--n-contexts", o.n_contexts, "contexts per word");
  extract->add_flag("--allow-short", o.allow_short, "accept words with fewer contexts");

  auto* audit = app.add_subcommand("audit", "forced-path audit of every context");
  add_common(audit, o);
  audit->add_option("--oracle", o.oracle, "ngram:<corpus-dir>:<order>:<alpha> or trace:<path>");
  audit->add_option("--tokenizer", o.tokenizer, "word, byte or bpe:<file>");
  audit->add_option("--targets", o.targets, "targets.json from select-words");
  audit->add_option("--contexts", o.contexts, "contexts.jsonl from extract-contexts");

  auto* sweep = app.add_subcommand("sweep", "coverage over the sampler grids");
  add_common(sweep, o);
  sweep->add_option("--trace", o.traces, "audit trace (repeatable)");

  auto* report = app.add_subcommand("report", "per-word reachability and frequency correlation");
  add_common(report, o);
  report->add_option("--trace", o.traces, "audit trace (repeatable)");
  report->add_option("--lexicon", o.lexicon, "targets.json or frequency list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const auto config = build_config(o);
    if (*select) {
      wcs::cmd_select_words(config, std::cerr);
    } else if (*extract) {
      wcs::cmd_extract_contexts(config, std::cerr);
    } else if (*audit) {
      const auto r = wcs::cmd_audit(config, std::cerr);
      if (!r.failures.empty()) std::cerr << r.failures.size() << " trial(s) failed\n";
    } else if (*sweep) {
      wcs::cmd_sweep(config, std::cerr);
    } else if (*report) {
      const auto r = wcs::cmd_report(config, std::cerr);
      std::cout << r.summary.dump(2) << '\n';
    }
  } catch (const wcs::Error& e) {
    std::cerr << "error (" << wcs::to_string(e.kind()) << "): " << e.what() << '\n';
    return wcs::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
