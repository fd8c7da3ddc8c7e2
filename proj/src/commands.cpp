#include "wcs/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <thread>
#include <unordered_map>
#include <variant>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "wcs/align.hpp"
#include "wcs/csv.hpp"
#include "wcs/error.hpp"
#include "wcs/io.hpp"
#include "wcs/ngram_oracle.hpp"
#include "wcs/plot.hpp"
#include "wcs/tokenizer.hpp"
#include "wcs/trace.hpp"

namespace wcs {

namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers. fn must not throw.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

void require_path(const std::filesystem::path& p, const char* key) {
  if (p.empty()) throw Error(ErrorKind::validation, fmt::format("missing required setting '{}'", key));
}

void ensure_out_dir(const std::filesystem::path& out) {
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) throw Error(ErrorKind::io, fmt::format("cannot create {}: {}", out.string(), ec.message()));
}

void write_meta(const RunConfig& config, const std::string& command, nlohmann::ordered_json details) {
  nlohmann::ordered_json meta;
  meta["command"] = command;
  meta["timestamp"] = fmt::format("{:%Y-%m-%dT%H:%M:%SZ}",
                                  fmt::gmtime(std::chrono::system_clock::to_time_t(
                                      std::chrono::system_clock::now())));
  meta["seed"] = config.seed;
  meta["details"] = std::move(details);
  write_file(config.out / (command + ".meta.json"), meta.dump(2) + "\n");
}

std::vector<std::string> document_texts(const CorpusIndex& corpus) {
  std::vector<std::string> texts;
  texts.reserve(corpus.documents().size());
  for (const auto& d : corpus.documents()) texts.push_back(d.text);
  return texts;
}

struct NgramSpec {
  std::filesystem::path corpus;
  std::size_t order;
  double alpha;
};

NgramSpec parse_ngram_spec(const std::string& spec) {
  // ngram:<corpus-dir>:<order>:<alpha>
  const auto last = spec.rfind(':');
  const auto mid = last == std::string::npos || last == 0 ? std::string::npos : spec.rfind(':', last - 1);
  if (mid == std::string::npos || mid <= 6) {
    throw Error(ErrorKind::validation,
                fmt::format("malformed oracle '{}' (expected ngram:<corpus-dir>:<order>:<alpha>)", spec));
  }
  NgramSpec out;
  out.corpus = spec.substr(6, mid - 6);
  try {
    std::size_t used = 0;
    const auto order_text = spec.substr(mid + 1, last - mid - 1);
    out.order = std::stoul(order_text, &used);
    if (used != order_text.size()) throw std::invalid_argument("order");
    const auto alpha_text = spec.substr(last + 1);
    out.alpha = std::stod(alpha_text, &used);
    if (used != alpha_text.size()) throw std::invalid_argument("alpha");
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::validation, fmt::format("malformed oracle '{}'", spec));
  }
  return out;
}

std::vector<LexEntry> load_lexicon(const std::filesystem::path& path) {
  if (path.extension() == ".json") return read_target_set(path);
  return load_frequency_list(path);
}

std::vector<double> recorded_temperatures(const std::vector<AuditRecord>& records) {
  std::vector<double> temps;
  if (records.empty()) return temps;
  for (const auto& [t, s] : records.front().steps.front().stats.per_temperature) temps.push_back(t);
  return temps;
}

void check_temperatures(const std::vector<AuditRecord>& records,
                        const std::vector<FilterConfig>& configs, const std::filesystem::path& trace) {
  const auto temps = recorded_temperatures(records);
  std::set<std::string> missing;
  for (const auto& cfg : configs) {
    const bool present = std::any_of(temps.begin(), temps.end(), [&](double t) {
      return std::abs(t - cfg.temperature) <= kTemperatureTolerance;
    });
    if (!present) missing.insert(format_temperature(cfg.temperature));
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw Error(ErrorKind::validation,
                fmt::format("temperature(s) {} requested but absent in trace {}", list, trace.string()));
  }
}

std::vector<std::vector<AuditRecord>> load_traces(const std::vector<std::filesystem::path>& paths) {
  std::vector<std::vector<AuditRecord>> traces;
  for (const auto& p : paths) traces.push_back(read_trace(p));
  return traces;
}

}  // namespace

std::vector<FilterConfig> sweep_configs(const RunConfig& config) {
  auto configs = config.grids.configs();
  for (const auto& cfg : config.default_settings) {
    if (std::find(configs.begin(), configs.end(), cfg) == configs.end()) configs.push_back(cfg);
  }
  return configs;
}

std::vector<std::string> trace_labels(const std::vector<std::filesystem::path>& traces) {
  std::vector<std::string> labels;
  std::map<std::string, int> used;
  for (const auto& p : traces) {
    std::string label = p.stem().string();
    if (label.empty()) label = "trace";
    if (const int n = used[label]++; n > 0) label += fmt::format("_{}", n + 1);
    labels.push_back(label);
  }
  return labels;
}

// --- select-words ----------------------------------------------------------

SelectWordsResult cmd_select_words(const RunConfig& config, std::ostream& log) {
  require_path(config.frequency_list, "frequency_list");
  require_path(config.dictionary, "dictionary");
  const auto entries = load_frequency_list(config.frequency_list);
  const auto dict = load_dictionary(config.dictionary);
  auto targets =
      select_targets(entries, dict, config.band_lo, config.band_hi, config.n_words, config.seed);

  ensure_out_dir(config.out);
  SelectWordsResult result{std::move(targets), config.targets_path()};
  write_target_set(result.output, result.targets);
  log << fmt::format("selected {} words from rank band [{}, {}] with seed {} -> {}\n",
                     result.targets.entries.size(), config.band_lo, config.band_hi, config.seed,
                     result.output.string());
  write_meta(config, "select-words",
             {{"frequency_list", config.frequency_list.string()},
              {"dictionary", config.dictionary.string()},
              {"entries", entries.size()},
              {"dictionary_words", dict.size()},
              {"band_lo", config.band_lo},
              {"band_hi", config.band_hi},
              {"n_words", config.n_words}});
  return result;
}

// --- extract-contexts ------------------------------------------------------

ExtractContextsResult cmd_extract_contexts(const RunConfig& config, std::ostream& log) {
  require_path(config.corpus_dir, "corpus_dir");
  const auto targets = read_target_set(config.targets_path());
  const auto corpus = CorpusIndex::load_directory(config.corpus_dir);
  if (corpus.empty()) {
    throw Error(ErrorKind::validation, fmt::format("corpus {} is empty", config.corpus_dir.string()));
  }

  ContextSearchOptions options;
  options.n_contexts = config.n_contexts;
  options.min_prefix_chars = config.min_prefix_chars;
  options.prefix_chars = config.prefix_chars;
  options.seed = config.seed;
  options.trial_budget = config.trial_budget;

  std::vector<ContextSearchResult> found(targets.size());
  parallel_for(targets.size(), config.threads, [&](std::size_t i) {
    found[i] = search_contexts(corpus, targets[i].word, options, heuristic_coherence);
  });

  ExtractContextsResult result;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    auto& samples = found[i].samples;
    if (samples.size() < config.n_contexts) {
      result.shortages.emplace_back(targets[i].word, samples.size());
      log << fmt::format("shortage: '{}' has {} of {} contexts ({} eligible occurrences, {} trials)\n",
                         targets[i].word, samples.size(), config.n_contexts, found[i].occurrences,
                         found[i].trials);
    }
    std::move(samples.begin(), samples.end(), std::back_inserter(result.samples));
  }

  ensure_out_dir(config.out);
  result.output = config.contexts_path();
  write_contexts(result.output, result.samples);
  log << fmt::format("wrote {} contexts for {} words -> {}\n", result.samples.size(), targets.size(),
                     result.output.string());
  write_meta(config, "extract-contexts",
             {{"corpus_dir", config.corpus_dir.string()},
              {"documents", corpus.documents().size()},
              {"total_bytes", corpus.total_bytes()},
              {"n_contexts", config.n_contexts},
              {"min_prefix_chars", config.min_prefix_chars},
              {"prefix_chars", config.prefix_chars},
              {"short_words", result.shortages.size()}});

  if (!result.shortages.empty() && !config.allow_short) {
    std::size_t found_total = 0;
    for (const auto& [w, n] : result.shortages) found_total += n;
    throw ShortageError(found_total, result.shortages.size() * config.n_contexts,
                        fmt::format("{} word(s) below {} contexts (use --allow-short to accept)",
                                    result.shortages.size(), config.n_contexts));
  }
  return result;
}

// --- audit -----------------------------------------------------------------

AuditResult cmd_audit(const RunConfig& config, std::ostream& log) {
  if (config.oracle.empty()) {
    throw Error(ErrorKind::validation,
                "missing required setting 'oracle' (ngram:<corpus-dir>:<order>:<alpha> or trace:<path>)");
  }
  auto contexts = read_contexts(config.contexts_path());
  const auto temps = normalize_temperatures(config.temperatures);

  std::unique_ptr<Tokenizer> tokenizer;
  std::unique_ptr<StepOracle> oracle;
  const TraceOracle* replay = nullptr;
  std::unordered_map<std::string, std::int64_t> ranks;

  if (config.oracle.starts_with("ngram:")) {
    const auto spec = parse_ngram_spec(config.oracle);
    const auto corpus = CorpusIndex::load_directory(spec.corpus);
    const auto texts = document_texts(corpus);
    tokenizer = make_tokenizer(config.tokenizer, texts);
    oracle = std::make_unique<NgramOracle>(build_ngram_oracle(texts, spec.order, spec.alpha, *tokenizer));
    for (const auto& e : read_target_set(config.targets_path())) ranks.emplace(e.word, e.rank);
    log << fmt::format("n-gram oracle: order {}, alpha {}, tokenizer {} ({} tokens)\n", spec.order,
                       spec.alpha, tokenizer->name(), tokenizer->vocab_size());
  } else if (config.oracle.starts_with("trace:")) {
    auto trace = std::make_unique<TraceOracle>(build_trace_oracle(config.oracle.substr(6)));
    replay = trace.get();
    oracle = std::move(trace);
    log << fmt::format("trace oracle: {} records, {} steps\n", replay->records().size(),
                       replay->step_count());
  } else {
    throw Error(ErrorKind::validation, fmt::format("unknown oracle spec '{}'", config.oracle));
  }

  auto rank_of = [&](const ContextSample& s) -> std::int64_t {
    if (replay) {
      const auto* r = replay->find(s.word, s.context_id);
      return r ? r->rank_in_band : 0;
    }
    const auto it = ranks.find(s.word);
    return it == ranks.end() ? 0 : it->second;
  };
  std::stable_sort(contexts.begin(), contexts.end(), [&](const auto& a, const auto& b) {
    return std::tuple(rank_of(a), a.word, a.context_id) < std::tuple(rank_of(b), b.word, b.context_id);
  });

  std::vector<std::variant<AuditRecord, std::string>> outcomes(contexts.size());
  parallel_for(contexts.size(), config.threads, [&](std::size_t i) {
    const auto& sample = contexts[i];
    const auto where = fmt::format("'{}' context {}", sample.word, sample.context_id);
    try {
      TokenPath path;
      TrialInfo trial{rank_of(sample), sample.context_id, sample.doc_id};
      if (replay) {
        auto recorded = replay->path_for(sample.word, sample.context_id);
        if (!recorded) {
          throw Error(ErrorKind::replay_miss, "no record for this trial in the trace");
        }
        path = std::move(*recorded);
        trial.doc_id = replay->find(sample.word, sample.context_id)->doc_id;
      } else {
        if (trial.rank_in_band == 0) {
          throw Error(ErrorKind::validation, "word is not in the target set");
        }
        path = align(sample, *tokenizer, config.prefix_tokens);
      }
      outcomes[i] = audit_word_context(path, *oracle, temps, trial);
    } catch (const Error& e) {
      outcomes[i] = fmt::format("{}: {} error: {}", where, to_string(e.kind()), e.what());
    }
  });

  AuditResult result;
  result.attempted = contexts.size();
  for (auto& o : outcomes) {
    if (auto* r = std::get_if<AuditRecord>(&o)) {
      result.records.push_back(std::move(*r));
    } else {
      result.failures.push_back(std::get<std::string>(o));
      log << "failed: " << result.failures.back() << '\n';
    }
  }

  ensure_out_dir(config.out);
  result.output = config.trace_out_path();
  write_trace(result.output, result.records);
  log << fmt::format("audited {} of {} trials -> {}\n", result.records.size(), result.attempted,
                     result.output.string());
  nlohmann::ordered_json temps_json = nlohmann::ordered_json::array();
  for (double t : temps) temps_json.push_back(format_temperature(t));
  write_meta(config, "audit",
             {{"oracle", config.oracle},
              {"tokenizer", replay ? "trace" : config.tokenizer},
              {"prefix_tokens", config.prefix_tokens},
              {"temperatures", temps_json},
              {"attempted", result.attempted},
              {"succeeded", result.records.size()}});
  if (result.attempted > 0 && result.records.empty()) {
    throw Error(ErrorKind::validation, "every audit trial failed");
  }
  return result;
}

// --- sweep -----------------------------------------------------------------

SweepResult cmd_sweep(const RunConfig& config, std::ostream& log) {
  const auto paths = config.trace_paths();
  const auto labels = trace_labels(paths);
  const auto configs = sweep_configs(config);
  const auto traces = load_traces(paths);

  ensure_out_dir(config.out);
  SweepResult result;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& records = traces[i];
    if (records.empty()) {
      throw Error(ErrorKind::validation, fmt::format("no records in {}", paths[i].string()));
    }
    check_temperatures(records, configs, paths[i]);
    TraceSweep ts;
    ts.label = labels[i];
    ts.trace = paths[i];
    ts.points = sweep(records, configs);
    for (const auto& cfg : configs) {
      auto scores = wcs_per_word(records, cfg);
      std::move(scores.begin(), scores.end(), std::back_inserter(ts.word_scores));
    }
    ts.results_csv = config.out / (ts.label + ".results.csv");
    ts.per_word_csv = config.out / (ts.label + ".per_word.csv");
    write_file(ts.results_csv, results_csv(ts.points));
    write_file(ts.per_word_csv, per_word_csv(ts.word_scores));
    log << fmt::format("{}: {} records, {} configurations -> {}\n", ts.label, records.size(),
                       configs.size(), ts.results_csv.string());
    for (const auto& pt : ts.points) {
      if (std::find(config.default_settings.begin(), config.default_settings.end(), pt.cfg) ==
          config.default_settings.end()) {
        continue;
      }
      log << fmt::format("  {:<22} wcs {:.3f}  words reachable {:.2f}  erased {:.0f}%\n",
                         describe(pt.cfg), pt.wcs, pt.words_reachable, 100.0 * pt.erased_fraction);
    }
    result.traces.push_back(std::move(ts));
  }

  const auto plot_dir = config.out / "plots";
  ensure_out_dir(plot_dir);
  struct Family {
    const char* sampler;
    const char* title;
    const char* x_label;
  };
  const Family families[] = {{"top_p", "Top-p", "p"}, {"top_k", "Top-k", "k"}, {"min_p", "Min-p", "m"}};
  for (const auto& fam : families) {
    for (double t : config.grids.temperatures) {
      for (const bool erased : {true, false}) {
        LinePlot plot;
        plot.title = fmt::format("{} at T={}: {}", fam.title, format_temperature(t),
                                 erased ? "fraction of words erased" : "WCS");
        plot.x_label = fam.x_label;
        plot.y_label = erased ? "erased fraction" : "WCS";
        for (const auto& ts : result.traces) {
          PlotSeries series{ts.label, {}};
          for (const auto& pt : ts.points) {
            if (pt.cfg.sampler() != fam.sampler ||
                std::abs(pt.cfg.temperature - t) > kTemperatureTolerance) {
              continue;
            }
            const double x = pt.cfg.p ? *pt.cfg.p : pt.cfg.k ? static_cast<double>(*pt.cfg.k) : *pt.cfg.m;
            series.points.emplace_back(x, erased ? pt.erased_fraction : pt.wcs);
          }
          plot.series.push_back(std::move(series));
        }
        const auto file = plot_dir / fmt::format("{}_T{}_{}.svg", fam.sampler, format_temperature(t),
                                                 erased ? "erased" : "wcs");
        write_file(file, render_svg(plot));
        result.plots.push_back(file);
      }
    }
  }
  log << fmt::format("wrote {} plots -> {}\n", result.plots.size(), plot_dir.string());

  nlohmann::ordered_json trace_json = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < paths.size(); ++i) {
    trace_json.push_back({{"label", labels[i]}, {"path", paths[i].string()}});
  }
  write_meta(config, "sweep", {{"traces", trace_json}, {"configurations", configs.size()}});
  return result;
}

// --- report ----------------------------------------------------------------

ReportResult cmd_report(const RunConfig& config, std::ostream& log) {
  const auto paths = config.trace_paths();
  const auto labels = trace_labels(paths);
  const auto traces = load_traces(paths);
  const auto configs = config.grids.configs();

  std::size_t n_records = 0;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    n_records += traces[i].size();
    if (!traces[i].empty()) check_temperatures(traces[i], configs, paths[i]);
  }
  if (n_records == 0) throw Error(ErrorKind::validation, "no records");

  const auto means = mean_word_reachability(traces, configs);
  std::vector<LexEntry> lexicon;
  std::unordered_map<std::string, std::uint64_t> counts;
  const auto lex_path = config.lexicon_path();
  if (std::filesystem::exists(lex_path)) {
    lexicon = load_lexicon(lex_path);
    for (const auto& e : lexicon) counts.emplace(e.word, e.count);
  } else {
    log << fmt::format("notice: lexicon {} not found; counts and correlation omitted\n",
                       lex_path.string());
  }

  auto word_json = [&](const WordMean& wm) {
    nlohmann::ordered_json j;
    j["word"] = wm.word;
    j["rank"] = wm.rank;
    if (const auto it = counts.find(wm.word); it != counts.end()) j["count"] = it->second;
    j["mean_reachability"] = wm.mean;
    return j;
  };

  nlohmann::ordered_json summary;
  summary["traces"] = labels;
  summary["n_records"] = n_records;
  summary["n_words"] = means.size();
  summary["n_configurations"] = configs.size();
  auto words = nlohmann::ordered_json::array();
  for (const auto& wm : means) words.push_back(word_json(wm));
  summary["words"] = std::move(words);

  auto by_mean = means;
  std::stable_sort(by_mean.begin(), by_mean.end(),
                   [](const WordMean& a, const WordMean& b) { return a.mean < b.mean; });
  const std::size_t n_extreme = std::min<std::size_t>(10, by_mean.size());
  auto hardest = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < n_extreme; ++i) hardest.push_back(word_json(by_mean[i]));
  std::stable_sort(by_mean.begin(), by_mean.end(),
                   [](const WordMean& a, const WordMean& b) { return a.mean > b.mean; });
  auto easiest = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < n_extreme; ++i) easiest.push_back(word_json(by_mean[i]));
  summary["hardest"] = std::move(hardest);
  summary["easiest"] = std::move(easiest);

  summary["pearson_log_freq"] = nullptr;
  if (means.size() < 3) {
    summary["notice"] = fmt::format("correlation omitted: need at least 3 words, have {}", means.size());
  } else if (lexicon.empty()) {
    summary["notice"] = "correlation omitted: no lexicon";
  } else {
    try {
      summary["pearson_log_freq"] = pearson_log_freq(means, lexicon);
    } catch (const Error& e) {
      summary["notice"] = fmt::format("correlation omitted: {}", e.what());
    }
  }
  if (summary.contains("notice")) log << "notice: " << summary["notice"].get<std::string>() << '\n';

  ensure_out_dir(config.out);
  ReportResult result{std::move(summary), config.out / "report.json"};
  write_file(result.output, result.summary.dump(2) + "\n");
  log << fmt::format("report over {} words from {} trace(s) -> {}\n", means.size(), traces.size(),
                     result.output.string());
  write_meta(config, "report", {{"lexicon", lex_path.string()}, {"configurations", configs.size()}});
  return result;
}

}  // namespace wcs
