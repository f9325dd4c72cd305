// Command-line front end: train a tag model from a tagged corpus, tag raw or
// pre-tokenized text, evaluate predictions against gold, split corpora.
//
// Exit codes: 0 ok, 1 usage, 2 I/O, 3 corpus parse/format, 4 model load,
// 5 gold/predicted misalignment.

#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tagkit/tagkit.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitParse = 3;
constexpr int kExitModel = 4;
constexpr int kExitAlignment = 5;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("error while reading '" + path + "'");
  }
  return buffer.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) {
    throw IoError("error while writing '" + path + "'");
  }
}

struct TrainArgs {
  std::string corpus_path;
  std::string model_path;
  int order = 3;
  std::string smoothing = "interp";
  double k = 1.0;
  std::string lambdas;
  std::string oov = "uniform";
};

struct TagArgs {
  std::string model_path;
  std::string in_path;
  std::string out_path;
  bool raw = false;
  bool oracle = false;
  std::size_t cap = 6;
};

struct EvalArgs {
  std::string gold_path;
  std::string in_path;
  std::string out_path;
};

struct SplitArgs {
  std::string corpus_path;
  std::string train_out;
  std::string test_out;
  double ratio = 0.8;
  std::uint64_t seed = 0;
};

tagkit::SmoothingConfig make_smoothing(const TrainArgs& args) {
  tagkit::SmoothingConfig config;
  if (args.smoothing == "none") {
    config.mode = tagkit::SmoothingMode::kNone;
  } else if (args.smoothing == "addk") {
    config.mode = tagkit::SmoothingMode::kAddK;
    config.k = args.k;
  } else {
    config.mode = tagkit::SmoothingMode::kInterpolation;
  }
  if (!args.lambdas.empty()) {
    std::array<double, 3> values{};
    std::stringstream ss(args.lambdas);
    std::string field;
    std::size_t i = 0;
    while (std::getline(ss, field, ',')) {
      try {
        if (i < 3) values[i] = std::stod(field);
      } catch (const std::exception&) {
        throw tagkit::DomainError("--lambdas expects three comma-separated numbers");
      }
      ++i;
    }
    if (i != 3) {
      throw tagkit::DomainError("--lambdas expects three comma-separated numbers");
    }
    config.lambdas = values;
  }
  config.oov_mode = args.oov == "singleton" ? tagkit::OovMode::kSingletonDistribution
                                            : tagkit::OovMode::kUniformOpenClass;
  return config;
}

int run_train(const TrainArgs& args) {
  std::string text = read_file(args.corpus_path);
  tagkit::TaggedCorpus corpus = tagkit::parse_tagged_corpus(text, tagkit::Tagset::il_default());
  tagkit::ValidationReport stats = tagkit::validate_corpus(corpus);

  tagkit::CountsTable counts = tagkit::collect_counts(corpus);
  tagkit::TagModel model = tagkit::finalize(std::move(counts), make_smoothing(args), args.order);
  write_file(args.model_path, tagkit::serialize_model(model));

  std::printf("sentences   %zu\n", stats.sentences);
  std::printf("tokens      %zu\n", stats.tokens);
  std::printf("vocabulary  %zu\n", stats.vocabulary_size);
  if (model.smoothing().mode == tagkit::SmoothingMode::kInterpolation) {
    const auto& l = *model.smoothing().lambdas;
    std::printf("lambdas     %.6f %.6f %.6f\n", l[0], l[1], l[2]);
  }
  std::printf("model       %s\n", args.model_path.c_str());
  return kExitOk;
}

tagkit::TagModel load_model(const std::string& path) {
  std::string bytes;
  try {
    bytes = read_file(path);
  } catch (const IoError& e) {
    throw tagkit::ModelLoadError(e.what());
  }
  return tagkit::deserialize_model(bytes);
}

int run_tag(const TagArgs& args) {
  tagkit::TagModel model = load_model(args.model_path);
  std::string text = read_file(args.in_path);
  std::vector<tagkit::Sentence> sentences =
      args.raw ? tagkit::parse_raw_text(text) : tagkit::parse_pretokenized(text);

  std::vector<tagkit::TaggedSentence> tagged;
  tagged.reserve(sentences.size());
  for (const tagkit::Sentence& sentence : sentences) {
    tagkit::DecodeResult result = args.oracle
                                      ? tagkit::brute_force_decode(model, sentence, args.cap)
                                      : tagkit::viterbi_decode(model, sentence);
    tagged.push_back(std::move(result.tagged));
  }

  std::string out = tagkit::write_tagged_corpus(
      tagkit::TaggedCorpus(model.tagset(), std::move(tagged)));
  if (args.out_path.empty()) {
    std::fwrite(out.data(), 1, out.size(), stdout);
  } else {
    write_file(args.out_path, out);
  }
  return kExitOk;
}

int run_eval(const EvalArgs& args) {
  const tagkit::Tagset& tagset = tagkit::Tagset::il_default();
  tagkit::TaggedCorpus gold = tagkit::parse_tagged_corpus(read_file(args.gold_path), tagset);
  tagkit::TaggedCorpus predicted = tagkit::parse_tagged_corpus(read_file(args.in_path), tagset);

  tagkit::EvalReport report = tagkit::evaluate(gold, predicted);
  std::string text = tagkit::format_report_text(report);
  std::fwrite(text.data(), 1, text.size(), stdout);
  if (!args.out_path.empty()) {
    write_file(args.out_path, tagkit::format_report_kv(report));
  }
  return kExitOk;
}

int run_split(const SplitArgs& args) {
  tagkit::TaggedCorpus corpus =
      tagkit::parse_tagged_corpus(read_file(args.corpus_path), tagkit::Tagset::il_default());
  auto [train, test] = tagkit::split_corpus(corpus, args.ratio, args.seed);
  write_file(args.train_out, tagkit::write_tagged_corpus(train));
  write_file(args.test_out, tagkit::write_tagged_corpus(test));
  std::printf("train       %zu sentences -> %s\n", train.sentence_count(),
              args.train_out.c_str());
  std::printf("test        %zu sentences -> %s\n", test.sentence_count(), args.test_out.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tagkit: statistical trigram part-of-speech tagger"};
  app.set_version_flag("--version", std::string("tagkit ") + std::string(tagkit::kVersion));
  app.require_subcommand(0, 1);

  TrainArgs train_args;
  CLI::App* train = app.add_subcommand("train", "Train a tag model from a tagged corpus");
  train->add_option("--corpus", train_args.corpus_path, "Tagged corpus file")->required();
  train->add_option("--model", train_args.model_path, "Output model file")->required();
  train->add_option("--order", train_args.order, "Model order (1, 2 or 3)")
      ->check(CLI::IsMember({1, 2, 3}))
      ->capture_default_str();
  train->add_option("--smoothing", train_args.smoothing, "Transition smoothing")
      ->check(CLI::IsMember({"none", "addk", "interp"}))
      ->capture_default_str();
  train->add_option("--k", train_args.k, "Add-k strength")->capture_default_str();
  train->add_option("--lambdas", train_args.lambdas,
                    "Interpolation weights as l1,l2,l3 (estimated when omitted)");
  train->add_option("--oov", train_args.oov, "Unknown-word emission mode")
      ->check(CLI::IsMember({"uniform", "singleton"}))
      ->capture_default_str();

  TagArgs tag_args;
  CLI::App* tag = app.add_subcommand("tag", "Tag text with a trained model");
  tag->add_option("--model", tag_args.model_path, "Model file")->required();
  tag->add_option("--in", tag_args.in_path, "Input file (one token per line unless --raw)")
      ->required();
  tag->add_option("--out", tag_args.out_path, "Output file (stdout when omitted)");
  tag->add_flag("--raw", tag_args.raw, "Input is raw text; split sentences and tokens first");
  tag->add_flag("--oracle", tag_args.oracle,
                "Decode by exhaustive enumeration (testing aid, see --cap)");
  tag->add_option("--cap", tag_args.cap, "Sentence-length cap for --oracle")
      ->capture_default_str();

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "Score predicted tags against gold tags");
  eval->add_option("--gold", eval_args.gold_path, "Gold tagged corpus")->required();
  eval->add_option("--in", eval_args.in_path, "Predicted tagged corpus")->required();
  eval->add_option("--out", eval_args.out_path, "Write machine-readable report here");

  SplitArgs split_args;
  CLI::App* split = app.add_subcommand("split", "Deterministic seeded train/test split");
  split->add_option("--corpus", split_args.corpus_path, "Tagged corpus file")->required();
  split->add_option("--train-out", split_args.train_out, "Training split output")->required();
  split->add_option("--test-out", split_args.test_out, "Test split output")->required();
  split->add_option("--ratio", split_args.ratio, "Fraction of sentences for training")
      ->capture_default_str();
  split->add_option("--seed", split_args.seed, "Shuffle seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (train->parsed()) return run_train(train_args);
    if (tag->parsed()) return run_tag(tag_args);
    if (eval->parsed()) return run_eval(eval_args);
    if (split->parsed()) return run_split(split_args);
    std::cerr << app.help() << std::flush;
    return kExitUsage;
  } catch (const tagkit::AlignmentError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitAlignment;
  } catch (const tagkit::ModelLoadError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitModel;
  } catch (const tagkit::ParseError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitParse;
  } catch (const tagkit::TagsetError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitParse;
  } catch (const tagkit::EmptyCorpusError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitParse;
  } catch (const tagkit::DegenerateCountsError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitParse;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitIo;
  } catch (const tagkit::Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitIo;
  }
}
