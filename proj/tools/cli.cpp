#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "hcbreak/analysis.hpp"
#include "hcbreak/attacks.hpp"
#include "hcbreak/chaos.hpp"
#include "hcbreak/cipher.hpp"
#include "hcbreak/errors.hpp"
#include "hcbreak/imageio.hpp"
#include "hcbreak/report.hpp"

namespace hcbreak::cli {

namespace fs = std::filesystem;
using report::Json;

namespace {

struct KeyArgs {
  std::string inline_key;
  std::string key_file;

  void add_to(CLI::App* app) {
    app->add_option("--key", inline_key, "Inline key \"x0,y0,z0,w0,n0,c0\" (wins over --key-file)");
    app->add_option("--key-file", key_file, "Key file holding \"x0 y0 z0 w0 n0 c0\"");
  }

  chaos::SecretKey resolve() const {
    if (!inline_key.empty()) return chaos::parse_key(inline_key);
    if (!key_file.empty()) return imageio::load_key(key_file);
    throw CLI::ValidationError("--key", "a key is required (--key or --key-file)");
  }
};

struct Context {
  std::ostream& out;
  std::ostream& err;
};

void emit(const Json& doc, const std::string& path, Context& ctx) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty()) {
    ctx.out << text;
  } else {
    imageio::write_file(path, text);
    ctx.out << "report written to " << path << "\n";
  }
}

// ---------------------------------------------------------------------------

struct CipherArgs {
  KeyArgs key;
  std::string in, out;
};

void cmd_cipher(const CipherArgs& a, bool encrypt, Context& ctx) {
  const chaos::SecretKey key = a.key.resolve();
  imageio::GrayImage img = imageio::load_pgm(a.in);
  const ByteSeq k = chaos::keystream(key, img.pixels.size());
  img.pixels = encrypt ? cipher::encrypt(img.pixels, k, key.c0) : cipher::decrypt(img.pixels, k, key.c0);
  imageio::save_pgm(a.out, img);
  ctx.out << (encrypt ? "encrypted " : "decrypted ") << img.width << "x" << img.height
          << " image, keystream fingerprint " << report::fingerprint(k) << "\n";
}

struct KeygenArgs {
  std::uint64_t seed = 1;
  std::string out;
};

void cmd_keygen(const KeygenArgs& a, Context& ctx) {
  std::mt19937_64 rng(a.seed);
  const chaos::SecretKey key = analysis::sample_key(rng);
  if (a.out.empty()) {
    ctx.out << chaos::format_key(key) << "\n";
  } else {
    imageio::save_key(a.out, key);
    ctx.out << "key written to " << a.out << "\n";
  }
}

struct KeystreamArgs {
  KeyArgs key;
  std::size_t length = 0;
  std::string like;
  std::string out;
};

void cmd_keystream(const KeystreamArgs& a, Context& ctx) {
  const chaos::SecretKey key = a.key.resolve();
  std::size_t length = a.length;
  if (!a.like.empty()) length = imageio::load_pgm(a.like).pixels.size();
  if (length == 0) throw CLI::ValidationError("--length", "give --length or --like");
  const ByteSeq k = chaos::keystream(key, length);
  imageio::write_file(a.out, imageio::write_raw(k));
  ctx.out << "wrote " << length << " keystream bytes to " << a.out << ", fingerprint "
          << report::fingerprint(k) << "\n";
}

// ---------------------------------------------------------------------------

struct AttackArgs {
  std::string plain, cipher, plain2, cipher2;
  std::optional<int> c0;
  bool require_both = false;
  bool either_final = false;
  bool search_c0 = false;
  bool assume_zero = false;
  unsigned threads = 0;
  std::string report;
  std::string keystream_out;
  std::string apply_to;
  std::string recovered_out;
  std::string reference;
};

std::optional<Byte> checked_c0(const std::optional<int>& c0) {
  if (!c0) return std::nullopt;
  if (*c0 < 1 || *c0 > 255) throw CLI::ValidationError("--c0", "must lie in [1, 255]");
  return static_cast<Byte>(*c0);
}

void write_candidates(const std::string& prefix, const attacks::AttackReport& rep, Context& ctx) {
  for (const auto& cand : rep.candidates) {
    std::ostringstream name;
    name << prefix << "_" << std::setw(3) << std::setfill('0') << int(cand.k_second_last) << "_"
         << std::setw(3) << int(cand.k_last) << ".key";
    imageio::write_file(name.str(), imageio::write_raw(cand.k));
  }
  ctx.out << "exported " << rep.candidates.size() << " keystream candidate(s) with prefix " << prefix
          << "\n";
}

// Decrypts a further ciphertext with every candidate; scores against a
// reference plaintext when one is given.
void apply_candidates(const AttackArgs& a, attacks::AttackReport& rep, ByteView known_plain,
                      std::optional<Byte> c0, Context& ctx) {
  if (a.apply_to.empty()) return;
  imageio::GrayImage target = imageio::load_pgm(a.apply_to);
  std::optional<imageio::GrayImage> reference;
  if (!a.reference.empty()) reference = imageio::load_pgm(a.reference);
  bool written = false;
  for (auto& cand : rep.candidates) {
    if (cand.k.size() != target.pixels.size()) throw LengthMismatch(cand.k.size(), target.pixels.size());
    const Byte seed = c0 ? *c0 : attacks::implied_c0(cand, known_plain);
    if (seed == 0) continue;
    const ByteSeq recovered = cipher::decrypt(target.pixels, cand.k, seed);
    if (reference) cand.score = attacks::score_recovery(reference->pixels, recovered);
    if (!written && !a.recovered_out.empty()) {
      imageio::save_pgm(a.recovered_out, {target.width, target.height, recovered});
      ctx.out << "recovered image (candidate kL1=" << int(cand.k_second_last)
              << ", kL=" << int(cand.k_last) << ") written to " << a.recovered_out << "\n";
      written = true;
    }
    if (cand.score) {
      ctx.out << "candidate kL1=" << int(cand.k_second_last) << " kL=" << int(cand.k_last)
              << ": " << std::fixed << std::setprecision(2) << 100.0 * *cand.score
              << "% pixels correct\n";
    }
  }
}

Json attack_config(const std::string& kind, const AttackArgs& a) {
  Json cfg{{"attack", kind}, {"plain", a.plain}, {"cipher", a.cipher}};
  if (!a.plain2.empty()) cfg["plain2"] = a.plain2;
  if (!a.cipher2.empty()) cfg["cipher2"] = a.cipher2;
  cfg["c0"] = a.c0 ? Json(*a.c0) : Json(nullptr);
  cfg["require_both"] = a.require_both;
  cfg["either_final"] = a.either_final;
  cfg["search_c0"] = a.search_c0;
  if (!a.apply_to.empty()) cfg["apply_to"] = a.apply_to;
  if (!a.reference.empty()) cfg["reference"] = a.reference;
  return cfg;
}

void cmd_kpa1(const AttackArgs& a, Context& ctx) {
  const auto p = imageio::load_pgm(a.plain);
  const auto c = imageio::load_pgm(a.cipher);
  attacks::KpaOneOptions opts;
  opts.c0 = checked_c0(a.c0);
  opts.require_both = a.require_both;
  opts.search_c0 = a.search_c0;
  opts.threads = a.threads;
  if (opts.require_both && !opts.c0 && !opts.search_c0) {
    throw CLI::ValidationError("--require-both", "needs --c0 or --search-c0");
  }
  attacks::AttackReport rep = attacks::kpa_one(p.pixels, c.pixels, opts);
  ctx.out << "kpa1: " << rep.guesses_tested << " guesses, " << rep.candidates.size()
          << " candidate(s) passed verification\n";
  if (!a.keystream_out.empty()) write_candidates(a.keystream_out, rep, ctx);
  apply_candidates(a, rep, p.pixels, opts.c0, ctx);
  Json doc = report::document("attack", attack_config("kpa1", a));
  report::add_attack(doc, rep);
  emit(doc, a.report, ctx);
}

void cmd_kpa2(const AttackArgs& a, Context& ctx) {
  const auto p1 = imageio::load_pgm(a.plain);
  const auto c1 = imageio::load_pgm(a.cipher);
  const auto p2 = imageio::load_pgm(a.plain2);
  const auto c2 = imageio::load_pgm(a.cipher2);
  attacks::KpaTwoOptions opts;
  opts.c0 = checked_c0(a.c0);
  opts.final_check = a.either_final ? attacks::FinalCheck::kEither : attacks::FinalCheck::kRequireBoth;
  opts.threads = a.threads;
  attacks::AttackReport rep = attacks::kpa_two(p1.pixels, c1.pixels, p2.pixels, c2.pixels, opts);
  ctx.out << "kpa2: " << rep.guesses_tested << " guesses, " << rep.steps_evaluated
          << " chain steps, " << rep.candidates.size() << " candidate(s)\n";
  if (rep.degenerate_pairs) {
    ctx.err << "warning: the two known pairs are identical; the chain conditions carry no "
               "information\n";
  }
  if (!a.keystream_out.empty()) write_candidates(a.keystream_out, rep, ctx);
  apply_candidates(a, rep, p1.pixels, opts.c0, ctx);
  Json doc = report::document("attack", attack_config("kpa2", a));
  report::add_attack(doc, rep);
  emit(doc, a.report, ctx);
}

void cmd_cpa(const AttackArgs& a, Context& ctx) {
  const auto c = imageio::load_pgm(a.cipher);
  if (a.plain.empty() && !a.assume_zero) {
    throw CLI::ValidationError("cpa", "give the chosen plaintext with --plain or pass --assume-zero");
  }
  if (!a.plain.empty()) {
    const auto p = imageio::load_pgm(a.plain);
    const bool zero = std::all_of(p.pixels.begin(), p.pixels.end(), [](Byte v) { return v == 0; });
    if (!zero) {
      if (!a.assume_zero) throw FormatError("cpa: the chosen plaintext must be all-zero");
      ctx.err << "warning: plaintext is not all-zero; candidate sets assume p(i) = 0 and may "
                 "miss the true pairs\n";
    }
  }
  const attacks::CpaResult res = attacks::cpa_zero_plain(c.pixels, checked_c0(a.c0));
  ctx.out << "cpa: " << res.sets.size() << " positions, " << res.pair_evaluations
          << " pair evaluations\n";
  Json doc = report::document("attack", attack_config("cpa", a));
  report::add_cpa(doc, res);
  emit(doc, a.report, ctx);
}

// ---------------------------------------------------------------------------

struct ExperimentArgs {
  std::uint64_t seed = 20130101;
  std::size_t keys = 100;
  std::size_t trials = 1000;
  std::size_t length = 0;
  std::size_t size = 128;
  std::string image, probe;
  bool secret_c0 = false;
  unsigned threads = 0;
  std::string report, csv;
};

void cmd_candidates(const ExperimentArgs& a, Context& ctx) {
  if (a.image.empty()) throw CLI::ValidationError("--image", "candidates needs a grayscale image");
  imageio::GrayImage img = imageio::load_pgm(a.image);
  if (a.size != 0 && (img.width != a.size || img.height != a.size)) {
    img = imageio::downsample_nearest(img, a.size, a.size);
  }
  imageio::GrayImage probe;
  if (!a.probe.empty()) {
    probe = imageio::load_pgm(a.probe);
    if (probe.width != img.width || probe.height != img.height) {
      probe = imageio::downsample_nearest(probe, img.width, img.height);
    }
  } else {
    // Left-right mirror: a second natural plaintext of the same size.
    probe = img;
    for (std::size_t y = 0; y < img.height; ++y) {
      std::reverse(probe.pixels.begin() + static_cast<std::ptrdiff_t>(y * img.width),
                   probe.pixels.begin() + static_cast<std::ptrdiff_t>((y + 1) * img.width));
    }
  }
  analysis::ExperimentConfig cfg;
  cfg.n_keys = a.keys;
  cfg.seed = a.seed;
  cfg.require_both = !a.secret_c0;
  cfg.threads = a.threads;
  const auto res = analysis::candidate_count_experiment(cfg, img.pixels, probe.pixels);

  Json config{{"experiment", "candidates"},   {"image", a.image},
              {"probe", a.probe.empty() ? "mirror" : a.probe},
              {"width", img.width},     {"height", img.height},
              {"keys", a.keys},         {"seed", a.seed},
              {"c0_known", !a.secret_c0},
              {"ranges", {{"state", "(0, 10]"}, {"n0", "[501, 1500]"}, {"c0", "[1, 255]"}}}};
  Json doc = report::document("experiment", std::move(config));
  report::add_candidate_counts(doc, res);
  ctx.out << "candidates: " << res.keys.size() << " keys, median " << res.median << ", unique "
          << 100.0 * res.fraction_unique << "%, below six " << 100.0 * res.fraction_below_six
          << "%, min " << res.minimum << ", max " << res.maximum << "\n";
  if (res.mean_wrong_candidate_score) {
    ctx.out << "candidates: wrong candidates recover " << 100.0 * *res.mean_wrong_candidate_score
            << "% of probe pixels on average\n";
  }
  if (!a.csv.empty()) imageio::write_file(a.csv, report::candidate_counts_csv(res));
  emit(doc, a.report, ctx);
}

void cmd_diffusion(const ExperimentArgs& a, Context& ctx) {
  const std::size_t length = a.length ? a.length : 256;
  std::mt19937_64 rng(a.seed);
  std::array<std::uint64_t, 8> violations{};
  std::array<std::uint64_t, 8> changed_bits{};
  for (std::size_t trial = 0; trial < a.trials; ++trial) {
    const chaos::SecretKey key = analysis::sample_key(rng);
    const ByteSeq p = analysis::random_bytes(rng, length);
    const ByteSeq k = chaos::keystream(key, length);
    const std::size_t pos = rng() % length;
    for (unsigned b = 0; b < 8; ++b) {
      const auto mask = analysis::diffusion_mask(p, k, key.c0, pos, b);
      violations[b] += analysis::bits_below_plane(mask, b);
      changed_bits[b] += analysis::hamming_bits(mask, ByteSeq(mask.size(), 0));
    }
  }
  Json planes = Json::array();
  for (unsigned b = 0; b < 8; ++b) {
    ctx.out << "bit plane " << b << ": violations " << violations[b] << ", changed bits "
            << changed_bits[b] << "\n";
    planes.push_back({{"plane", b}, {"violations", violations[b]}, {"changed_bits", changed_bits[b]}});
  }
  Json doc = report::document(
      "experiment", {{"experiment", "diffusion"}, {"trials", a.trials}, {"length", length}, {"seed", a.seed}});
  doc["planes"] = std::move(planes);
  emit(doc, a.report, ctx);
}

void cmd_equivalence(const ExperimentArgs& a, Context& ctx) {
  const std::size_t length = a.length ? a.length : 64;
  std::mt19937_64 rng(a.seed);
  std::uint64_t differing = 0;
  for (std::size_t trial = 0; trial < a.trials; ++trial) {
    const ByteSeq p = analysis::random_bytes(rng, length);
    const ByteSeq k = analysis::random_bytes(rng, length);
    const auto c0 = static_cast<Byte>(1 + rng() % 255);
    const ByteSeq c = cipher::encrypt(p, k, c0);
    const ByteSeq c_flip = cipher::encrypt(p, analysis::flip_msb(k), c0);
    for (std::size_t i = 0; i < length; ++i) differing += c[i] != c_flip[i];
  }
  ctx.out << "global MSB-flip: " << differing << " differing bytes\n";

  constexpr std::size_t kProbeLength = 4;
  std::map<std::size_t, std::size_t> equivalent_counts;
  std::map<std::uint32_t, std::size_t> mask_frequency;
  for (std::size_t trial = 0; trial < a.trials; ++trial) {
    const ByteSeq p = analysis::random_bytes(rng, kProbeLength);
    const ByteSeq k = analysis::random_bytes(rng, kProbeLength);
    const auto c0 = static_cast<Byte>(1 + rng() % 255);
    const auto probe = analysis::per_element_flip_probe(p, k, c0);
    ++equivalent_counts[probe.equivalent_masks.size()];
    for (auto m : probe.equivalent_masks) ++mask_frequency[m];
  }
  Json counts = Json::object();
  for (const auto& [n, times] : equivalent_counts) {
    ctx.out << "per-element flip probe (L=4): " << n << " of 16 flip subsets equivalent in " << times
            << " of " << a.trials << " instances\n";
    counts[std::to_string(n)] = times;
  }
  Json masks = Json::object();
  for (const auto& [m, times] : mask_frequency) masks[std::to_string(m)] = times;
  Json doc = report::document(
      "experiment", {{"experiment", "equivalence"}, {"trials", a.trials}, {"length", length}, {"seed", a.seed}});
  doc["global_flip_differing_bytes"] = differing;
  doc["probe_length"] = kProbeLength;
  doc["probe_equivalent_subset_counts"] = std::move(counts);
  doc["probe_mask_frequency"] = std::move(masks);
  emit(doc, a.report, ctx);
}

void cmd_profile(const ExperimentArgs& a, Context& ctx) {
  const std::size_t length = a.length ? a.length : 4096;
  std::mt19937_64 rng(a.seed);
  const chaos::SecretKey key = analysis::sample_key(rng);
  const ByteSeq p1 = analysis::random_bytes(rng, length);
  const ByteSeq p2 = analysis::random_bytes(rng, length);
  const ByteSeq k = chaos::keystream(key, length);
  const auto profile = analysis::termination_profile(p1, cipher::encrypt(p1, k, key.c0), p2,
                                                     cipher::encrypt(p2, k, key.c0), a.threads);
  ctx.out << "profile: " << profile.wrong_guesses << " wrong guesses, surviving >= 1 condition: "
          << profile.surviving[1] << " (fraction " << profile.survival_fraction(1)
          << ", uniform model 1/256 = " << 1.0 / 256.0 << ")\n";
  Json doc = report::document("experiment", {{"experiment", "profile"},
                                             {"length", length},
                                             {"seed", a.seed},
                                             {"key", report::key_json(key)}});
  report::add_termination(doc, profile);
  emit(doc, a.report, ctx);
}

struct ScoreArgs {
  std::string reference, recovered;
  bool raw = false;
};

void cmd_score(const ScoreArgs& a, Context& ctx) {
  ByteSeq ref, rec;
  if (a.raw) {
    ref = imageio::read_raw(imageio::read_file(a.reference));
    rec = imageio::read_raw(imageio::read_file(a.recovered));
  } else {
    ref = imageio::load_pgm(a.reference).pixels;
    rec = imageio::load_pgm(a.recovered).pixels;
  }
  const double s = attacks::score_recovery(ref, rec);
  ctx.out << std::fixed << std::setprecision(6) << s << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{out, err};
  CLI::App app{"Workbench for a hyperchaos-based image cipher and its known-plaintext breaks",
               "hcbreak"};
  app.require_subcommand(1);

  KeygenArgs keygen;
  auto* keygen_cmd = app.add_subcommand("keygen", "Sample a random secret key");
  keygen_cmd->add_option("--seed", keygen.seed, "RNG seed");
  keygen_cmd->add_option("--out", keygen.out, "Key file to write (stdout if omitted)");

  CipherArgs enc, dec;
  auto* enc_cmd = app.add_subcommand("encrypt", "Encrypt a P5 grayscale image");
  auto* dec_cmd = app.add_subcommand("decrypt", "Decrypt a P5 grayscale image");
  for (auto [cmd, a] : {std::pair{enc_cmd, &enc}, std::pair{dec_cmd, &dec}}) {
    a->key.add_to(cmd);
    cmd->add_option("--in", a->in, "Input image")->required();
    cmd->add_option("--out", a->out, "Output image")->required();
  }

  KeystreamArgs ks;
  auto* ks_cmd = app.add_subcommand("keystream", "Export raw keystream bytes");
  ks.key.add_to(ks_cmd);
  ks_cmd->add_option("--length", ks.length, "Number of bytes");
  ks_cmd->add_option("--like", ks.like, "Take the length from this image");
  ks_cmd->add_option("--out", ks.out, "Raw output file")->required();

  AttackArgs atk;
  auto* atk_cmd = app.add_subcommand("attack", "Run an attack");
  atk_cmd->require_subcommand(1);
  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--threads", atk.threads, "Worker threads (0: all cores)");
    cmd->add_option("--out", atk.report, "Report file (stdout if omitted)");
    cmd->add_option("--c0", atk.c0, "Known seed byte c0");
  };
  auto recovery = [&](CLI::App* cmd) {
    cmd->add_option("--keystream-out", atk.keystream_out, "Prefix for exported candidate keystreams");
    cmd->add_option("--apply-to", atk.apply_to, "Further ciphertext to decrypt with the candidates");
    cmd->add_option("--recovered-out", atk.recovered_out, "Where to write the first decryption");
    cmd->add_option("--reference", atk.reference, "True plaintext of --apply-to, for scoring");
  };
  auto* kpa1_cmd = atk_cmd->add_subcommand("kpa1", "Known-plaintext attack with one pair");
  kpa1_cmd->add_option("--plain", atk.plain, "Known plain-image")->required();
  kpa1_cmd->add_option("--cipher", atk.cipher, "Its cipher-image")->required();
  kpa1_cmd->add_flag("--require-both", atk.require_both, "Require both first-element checks");
  kpa1_cmd->add_flag("--search-c0", atk.search_c0, "Sweep c0 over [1, 255]");
  common(kpa1_cmd);
  recovery(kpa1_cmd);
  auto* kpa2_cmd = atk_cmd->add_subcommand("kpa2", "Known-plaintext attack with two pairs");
  kpa2_cmd->add_option("--plain", atk.plain, "First known plain-image")->required();
  kpa2_cmd->add_option("--cipher", atk.cipher, "First cipher-image")->required();
  kpa2_cmd->add_option("--plain2", atk.plain2, "Second known plain-image")->required();
  kpa2_cmd->add_option("--cipher2", atk.cipher2, "Second cipher-image")->required();
  kpa2_cmd->add_flag("--either-final", atk.either_final,
                     "Accept a guess when either first-element condition holds");
  common(kpa2_cmd);
  recovery(kpa2_cmd);
  auto* cpa_cmd = atk_cmd->add_subcommand("cpa", "Chosen-plaintext baseline (all-zero plaintext)");
  cpa_cmd->add_option("--cipher", atk.cipher, "Cipher-image of the all-zero plain-image")->required();
  cpa_cmd->add_option("--plain", atk.plain, "The chosen plain-image, checked to be all-zero");
  cpa_cmd->add_flag("--assume-zero", atk.assume_zero, "Proceed as if the plaintext were all-zero");
  common(cpa_cmd);

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a statistical experiment");
  exp_cmd->require_subcommand(1);
  auto exp_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", exp.seed, "RNG seed");
    cmd->add_option("--out", exp.report, "Report file (stdout if omitted)");
    cmd->add_option("--threads", exp.threads, "Worker threads (0: all cores)");
  };
  auto* candidates_cmd = exp_cmd->add_subcommand("candidates", "Candidate counts of the one-pair attack");
  candidates_cmd->add_option("--image", exp.image, "Known plain-image (P5)")->required();
  candidates_cmd->add_option("--probe", exp.probe, "Further plain-image for partial-recovery scoring");
  candidates_cmd->add_option("--keys", exp.keys, "Number of random keys");
  candidates_cmd->add_option("--size", exp.size, "Resample to size x size (0 keeps the input)");
  candidates_cmd->add_flag("--secret-c0", exp.secret_c0, "Treat c0 as unknown (wrap-around check check only)");
  candidates_cmd->add_option("--csv", exp.csv, "CSV of key_index,candidate_count");
  exp_common(candidates_cmd);
  auto* diff_cmd = exp_cmd->add_subcommand("diffusion", "Bit-plane diffusion of plaintext flips");
  diff_cmd->add_option("--trials", exp.trials, "Random (position, image, key) trials");
  diff_cmd->add_option("--length", exp.length, "Plaintext length (default 256)");
  exp_common(diff_cmd);
  auto* eq_cmd = exp_cmd->add_subcommand("equivalence", "Equivalent keystreams under MSB flips");
  eq_cmd->add_option("--trials", exp.trials, "Random instances");
  eq_cmd->add_option("--length", exp.length, "Sequence length (default 64)");
  exp_common(eq_cmd);
  auto* prof_cmd = exp_cmd->add_subcommand("profile", "Early-termination depths of the two-pair attack");
  prof_cmd->add_option("--length", exp.length, "Plaintext length (default 4096)");
  exp_common(prof_cmd);

  ScoreArgs score;
  auto* score_cmd = app.add_subcommand("score", "Fraction of identical pixels/bytes");
  score_cmd->add_option("--reference", score.reference, "Reference file")->required();
  score_cmd->add_option("--recovered", score.recovered, "Recovered file")->required();
  score_cmd->add_flag("--raw", score.raw, "Inputs are raw byte files instead of P5 images");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (keygen_cmd->parsed()) cmd_keygen(keygen, ctx);
    else if (enc_cmd->parsed()) cmd_cipher(enc, true, ctx);
    else if (dec_cmd->parsed()) cmd_cipher(dec, false, ctx);
    else if (ks_cmd->parsed()) cmd_keystream(ks, ctx);
    else if (kpa1_cmd->parsed()) cmd_kpa1(atk, ctx);
    else if (kpa2_cmd->parsed()) cmd_kpa2(atk, ctx);
    else if (cpa_cmd->parsed()) cmd_cpa(atk, ctx);
    else if (candidates_cmd->parsed()) cmd_candidates(exp, ctx);
    else if (diff_cmd->parsed()) cmd_diffusion(exp, ctx);
    else if (eq_cmd->parsed()) cmd_equivalence(exp, ctx);
    else if (prof_cmd->parsed()) cmd_profile(exp, ctx);
    else if (score_cmd->parsed()) cmd_score(score, ctx);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kDivergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kData;
  }
  return kOk;
}

}  // namespace hcbreak::cli
