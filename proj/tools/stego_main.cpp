// stego: embed/extract messages in model-driven symbol streams, map
// messages into normal latent vectors, train models, and run the security
// verification harness.
//
// Exit codes: 0 success, 2 bad flags, 3 model I/O, 4 entropy exhausted,
// 5 malformed file, 6 model digest mismatch, 7 ambiguous/truncated stego,
// 8 state-space guard tripped.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include "stegocoder/baseline.hpp"
#include "stegocoder/bounds.hpp"
#include "stegocoder/coder.hpp"
#include "stegocoder/ks.hpp"
#include "stegocoder/latent.hpp"
#include "stegocoder/model_io.hpp"
#include "stegocoder/stego_file.hpp"

namespace {

using namespace stego;

int exit_code_for(const Error& e) {
    switch (e.code()) {
    case Errc::invalid_argument: return 2;
    case Errc::model_io: return 3;
    case Errc::entropy_exhausted: return 4;
    case Errc::format: return 5;
    case Errc::digest_mismatch: return 6;
    case Errc::ambiguous: return 7;
    case Errc::state_space: return 8;
    }
    return 1;
}

std::uint64_t resolve_seed(CLI::Option* seed_opt, std::uint64_t seed_flag) {
    if (seed_opt->count() > 0) return seed_flag;
    if (const char* env = std::getenv("STEGO_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
        raise(Errc::invalid_argument, "STEGO_SEED is not an integer");
    }
    std::random_device rd;
    std::uint64_t fresh = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cerr << "seed: " << fresh << " (pass --seed to reproduce)\n";
    return fresh;
}

Bits whiten_bits(const Bits& bits, const std::string& key) {
    Keystream ks(key, "whiten");
    Bits out = bits;
    for (auto& b : out) b = static_cast<std::uint8_t>(b ^ ks.next_bit());
    return out;
}

// message container embedded in the coder bit stream: a 32-bit big-endian
// payload bit count, then the payload bits
Bits frame_message(const std::vector<std::uint8_t>& payload) {
    Bits bits;
    std::uint64_t payload_bits = payload.size() * 8ull;
    require(payload_bits + 32 <= 0xffffffffull, Errc::invalid_argument, "message too long for the header");
    append_uint(bits, payload_bits, 32);
    Bits body = bytes_to_bits(payload);
    bits.insert(bits.end(), body.begin(), body.end());
    return bits;
}

std::vector<std::uint8_t> unframe_message(const Bits& bits) {
    require(bits.size() >= 32, Errc::format, "embedded stream shorter than its header");
    std::uint64_t payload_bits = read_uint(bits, 0, 32);
    require(payload_bits % 8 == 0, Errc::format, "payload bit count is not byte-aligned");
    require(bits.size() == 32 + payload_bits, Errc::format, "payload length disagrees with header");
    Bits body(bits.begin() + 32, bits.end());
    return bits_to_bytes(body);
}

std::vector<FrequencyTable> parse_tables(const std::string& spec) {
    std::vector<FrequencyTable> tables;
    std::stringstream rows(spec);
    std::string row;
    while (std::getline(rows, row, ';')) {
        std::vector<std::uint32_t> counts;
        std::stringstream cells(row);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            counts.push_back(static_cast<std::uint32_t>(std::stoul(cell)));
        }
        tables.emplace_back(std::move(counts));
    }
    require(!tables.empty(), Errc::invalid_argument, "no tables given");
    return tables;
}

struct EmbedOptions {
    std::string model_path;
    std::string in_path;
    std::string out_path;
    std::string mode = "paper";
    std::string engine = "fixed";
    std::string key;
    bool whiten = false;
    std::uint64_t n_target = 0;
    std::uint64_t max_symbols = 1ull << 22;
};

int cmd_embed(const EmbedOptions& opt) {
    auto model = load_model(opt.model_path);
    require(model->alphabet_size() <= 256, Errc::format, "stego container v1 holds alphabets up to 256");

    Bits message = frame_message(read_file(opt.in_path));
    StegoFile out;
    out.engine = opt.engine == "exact" ? CoderEngine::exact : CoderEngine::fixed;
    out.message_bits = static_cast<std::uint32_t>(message.size());
    out.alphabet_size = model->alphabet_size();
    out.model_digest = file_digest(opt.model_path);
    if (opt.whiten) {
        message = whiten_bits(message, opt.key);
        out.flags |= StegoFile::kFlagWhitened;
    }

    if (opt.mode == "paper") {
        out.mode = TerminationMode::paper;
        BitSource source(message);
        EmbedRequest req;
        req.mode = TerminationMode::paper;
        req.max_symbols = opt.max_symbols;
        out.symbols = embed_aad(source, message.size(), *model, req, out.engine).symbols;
    } else {
        out.mode = TerminationMode::prg_padding;
        require(opt.n_target > 0, Errc::invalid_argument, "--n-target is required in prg mode");
        // The padding keystream is invisible to the receiver, so an
        // ambiguous draw can be retried under a different salt.
        bool done = false;
        for (int attempt = 0; attempt < 16 && !done; ++attempt) {
            auto ks = std::make_shared<Keystream>(opt.key + "#" + std::to_string(attempt), "pad");
            BitSource source(message, [ks] { return ks->next_bit(); });
            EmbedRequest req;
            req.mode = TerminationMode::prg_padding;
            req.n_target = opt.n_target;
            req.max_symbols = std::max(opt.max_symbols, opt.n_target);
            out.symbols = embed_aad(source, message.size(), *model, req, out.engine).symbols;
            try {
                done = extract_aae(out.symbols, *model, message.size(), TerminationMode::prg_padding, {},
                                   out.engine) == message;
            } catch (const Error& e) {
                if (e.code() != Errc::ambiguous) throw;
            }
        }
        require(done, Errc::entropy_exhausted,
                "n-target leaves the message ambiguous; increase --n-target");
    }

    write_file(opt.out_path, write_stego(out));
    std::cerr << "embedded " << message.size() << " bits into " << out.symbols.size() << " symbols\n";
    return 0;
}

int cmd_extract(const std::string& model_path, const std::string& in_path, const std::string& out_path,
                const std::string& key) {
    StegoFile f = read_stego(read_file(in_path));
    require(file_digest(model_path) == f.model_digest, Errc::digest_mismatch,
            "model digest does not match the stego header");
    auto model = load_model(model_path);
    require(model->alphabet_size() == f.alphabet_size, Errc::format,
            "alphabet size disagrees with the stego header");

    Bits message = extract_aae(f.symbols, *model, f.message_bits, f.mode, {}, f.engine);
    if (f.flags & StegoFile::kFlagWhitened) message = whiten_bits(message, key);
    write_file(out_path, unframe_message(message));
    return 0;
}

int cmd_modulate(const std::string& in_path, const std::string& out_path, unsigned payload,
                 const std::string& method, std::uint64_t seed) {
    Bits bits = bytes_to_bits(read_file(in_path));
    LatentFile f;
    f.payload_bits = payload;
    f.message_bit_length = bits.size();
    while (bits.size() % payload != 0) bits.push_back(0); // pad; header records the true length

    IntervalPartition part(payload);
    f.boundaries = part.interior();
    std::mt19937_64 rng(seed);
    f.coordinates = modulate(bits, part, rng,
                             method == "rejection" ? ModulationMethod::rejection
                                                   : ModulationMethod::inverse_cdf);
    write_file(out_path, write_latent(f));
    std::cerr << "modulated " << f.message_bit_length << " bits into " << f.coordinates.size()
              << " coordinates\n";
    return 0;
}

int cmd_demodulate(const std::string& in_path, const std::string& out_path) {
    LatentFile f = read_latent(read_file(in_path));
    // demodulation uses the boundaries stored next to the coordinates
    IntervalPartition part(f.payload_bits, f.boundaries);
    Bits bits = demodulate(f.coordinates, part);
    require(f.message_bit_length <= bits.size(), Errc::format, "latent header length out of range");
    bits.resize(f.message_bit_length);
    require(bits.size() % 8 == 0, Errc::format, "latent payload is not byte-aligned");
    write_file(out_path, bits_to_bytes(bits));
    return 0;
}

int cmd_train(const std::string& corpus_path, const std::string& out_path, std::uint32_t order,
              std::uint32_t alphabet, std::uint32_t quant) {
    std::vector<std::uint8_t> corpus_bytes = read_file(corpus_path);
    std::vector<Symbol> corpus;
    corpus.reserve(corpus_bytes.size());
    for (std::uint8_t b : corpus_bytes) corpus.push_back(b % alphabet);
    MarkovModel model = train_markov(corpus, alphabet, order, quant);
    save_model(model, out_path);
    std::cerr << "trained order-" << order << " model over " << corpus.size() << " symbols, "
              << model.counts().size() << " contexts\n";
    return 0;
}

int cmd_make_model(const std::string& tables_spec, const std::string& out_path, bool single) {
    std::vector<FrequencyTable> tables = parse_tables(tables_spec);
    if (tables.size() == 1) {
        save_model(StaticModel(std::move(tables.front())), out_path);
    } else {
        require(!single, Errc::invalid_argument, "--single expects exactly one table");
        save_model(StaticModel(std::move(tables)), out_path);
    }
    return 0;
}

struct VerifyOptions {
    std::string model_path;
    std::string check = "kl";
    std::string mode = "paper";
    std::string out_path;
    std::vector<std::uint64_t> lengths{6, 8, 10, 12};
    std::vector<unsigned> e_bits{1, 2, 4};
    std::uint64_t prg_n = 4;
    std::uint64_t symbols = 10000;
    std::uint64_t trials = 10;
    std::uint64_t groups = 10000;
    std::uint64_t samples = 100000;
    unsigned payload = 4;
    unsigned workers = 4;
    std::uint64_t seed = 0;
};

int verify_kl(const VerifyOptions& opt, const ConditionalModel& model) {
    auto mode = opt.mode == "prg" ? TerminationMode::prg_padding : TerminationMode::paper;
    auto reports = verify_kl_bound(model, opt.lengths, mode, {}, opt.workers, opt.prg_n);
    std::cout << "KL bound check (" << opt.mode << " mode)\n";
    bool all_ok = true;
    for (const auto& r : reports) {
        std::cout << "  L=" << r.L << "  n=" << r.n << "  kl=" << r.kl_value << " bits/symbol"
                  << "  bound=" << r.bound << "  " << (r.satisfied ? "ok" : "VIOLATED")
                  << "  (total=" << r.kl_total << ", coverage=" << r.coverage << ", len " << r.min_length
                  << ".." << r.max_length << ")\n";
        all_ok = all_ok && r.satisfied;
    }
    if (!opt.out_path.empty()) {
        std::ofstream out(opt.out_path);
        require(out.good(), Errc::model_io, "cannot open report file: " + opt.out_path);
        write_bound_reports(out, reports);
    }
    std::cout << (all_ok ? "PASS" : "FAIL") << ": every divergence rate below 2/n\n";
    return all_ok ? 0 : 1;
}

int verify_rate(const VerifyOptions& opt, const ConditionalModel& model) {
    RateReport rep = rate_report(model, opt.symbols, opt.trials, opt.seed);
    std::cout << "rate check: " << rep.mean_rate << " bits/symbol (se " << rep.standard_error
              << ") vs entropy " << rep.entropy << " over " << rep.trials << " x "
              << rep.symbols_per_trial << "-symbol runs\n";
    std::cout << (rep.within_bounds ? "PASS" : "FAIL") << ": rate within [H, H + 2/n] up to noise\n";
    return rep.within_bounds ? 0 : 1;
}

int verify_baseline(const VerifyOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    bool all_ok = true;
    for (unsigned e : opt.e_bits) {
        Bits message(opt.groups * e);
        for (auto& b : message) b = static_cast<std::uint8_t>(rng() & 1);
        auto sampler = [&rng] { return rng(); };
        BaselineEmbedResult r = rejection_sample_embed("verify-key", message, e, sampler);
        bool recovered = rejection_sample_extract("verify-key", r.objects, e) == message;
        double expect = static_cast<double>(1u << e);
        bool close = std::abs(r.mean_draws_per_group - expect) <= 0.10 * expect;
        std::cout << "baseline e=" << e << ": mean draws/group " << r.mean_draws_per_group
                  << " (expect ~" << expect << "), recovery " << (recovered ? "exact" : "BROKEN")
                  << "\n";
        all_ok = all_ok && recovered && close;
    }
    std::cout << (all_ok ? "PASS" : "FAIL") << ": rejection baseline costs ~2^e draws per e bits\n";
    return all_ok ? 0 : 1;
}

int verify_ks(const VerifyOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    IntervalPartition part(opt.payload);
    Bits message(opt.samples * opt.payload);
    for (auto& b : message) b = static_cast<std::uint8_t>(rng() & 1);
    LatentVector z = modulate(message, part, rng);
    KsResult r = ks_normal_test(z);
    bool ok = r.p_value > 0.01;
    std::cout << "ks normality at p=" << opt.payload << ": D=" << r.statistic
              << " p-value=" << r.p_value << "\n";
    std::cout << (ok ? "PASS" : "FAIL") << ": modulated coordinates match the standard normal\n";
    return ok ? 0 : 1;
}

int cmd_verify(const VerifyOptions& opt) {
    std::unique_ptr<ConditionalModel> model;
    if (!opt.model_path.empty()) model = load_model(opt.model_path);

    int rc = 0;
    bool ran = false;
    if (opt.check == "kl" || opt.check == "all") {
        require(model != nullptr, Errc::invalid_argument, "--model is required for the kl check");
        rc |= verify_kl(opt, *model);
        ran = true;
    }
    if (opt.check == "rate" || opt.check == "all") {
        require(model != nullptr, Errc::invalid_argument, "--model is required for the rate check");
        rc |= verify_rate(opt, *model);
        ran = true;
    }
    if (opt.check == "baseline" || opt.check == "all") {
        rc |= verify_baseline(opt);
        ran = true;
    }
    if (opt.check == "ks" || opt.check == "all") {
        rc |= verify_ks(opt);
        ran = true;
    }
    require(ran, Errc::invalid_argument, "unknown check: " + opt.check);
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"model-driven steganographic coder and verification harness"};
    app.require_subcommand(1);

    EmbedOptions embed_opt;
    auto* embed = app.add_subcommand("embed", "embed a message file into a stego symbol stream");
    embed->add_option("--model", embed_opt.model_path, "model file")->required();
    embed->add_option("--in", embed_opt.in_path, "message file")->required();
    embed->add_option("--out", embed_opt.out_path, "stego file")->required();
    embed->add_option("--mode", embed_opt.mode, "termination mode")
        ->check(CLI::IsMember({"paper", "prg"}));
    embed->add_option("--engine", embed_opt.engine, "coder engine")
        ->check(CLI::IsMember({"fixed", "exact"}));
    embed->add_option("--n-target", embed_opt.n_target, "symbol count (prg mode)");
    embed->add_option("--max-symbols", embed_opt.max_symbols, "paper-mode symbol budget");
    embed->add_option("--key", embed_opt.key, "key for the padding keystream / whitener");
    embed->add_flag("--whiten", embed_opt.whiten, "XOR the message with a keyed keystream");

    std::string x_model, x_in, x_out, x_key;
    auto* extract = app.add_subcommand("extract", "recover the message from a stego file");
    extract->add_option("--model", x_model, "model file")->required();
    extract->add_option("--in", x_in, "stego file")->required();
    extract->add_option("--out", x_out, "message file")->required();
    extract->add_option("--key", x_key, "key (whitened messages)");

    std::string m_in, m_out, m_method = "inverse-cdf";
    unsigned m_payload = 1;
    std::uint64_t m_seed = 0;
    auto* mod = app.add_subcommand("modulate", "map a message file into normal latent coordinates");
    mod->add_option("--in", m_in, "message file")->required();
    mod->add_option("--out", m_out, "latent file")->required();
    mod->add_option("--payload", m_payload, "bits per coordinate (1..16)")->required();
    mod->add_option("--method", m_method, "sampling method")
        ->check(CLI::IsMember({"inverse-cdf", "rejection"}));
    auto* m_seed_opt = mod->add_option("--seed", m_seed, "RNG seed");

    std::string d_in, d_out;
    auto* demod = app.add_subcommand("demodulate", "recover the message from a latent file");
    demod->add_option("--in", d_in, "latent file")->required();
    demod->add_option("--out", d_out, "message file")->required();

    std::string t_corpus, t_out;
    std::uint32_t t_order = 2, t_alphabet = 256, t_quant = MarkovModel::kDefaultQuantization;
    auto* train = app.add_subcommand("train", "train an order-k Markov model on a byte corpus");
    train->add_option("--corpus", t_corpus, "corpus file")->required();
    train->add_option("--out", t_out, "model file")->required();
    train->add_option("--order", t_order, "context order k");
    train->add_option("--alphabet", t_alphabet, "alphabet size (bytes reduced modulo this)")
        ->check(CLI::Range(2u, 256u));
    train->add_option("--quant", t_quant, "quantization width");

    std::string mk_tables, mk_out;
    bool mk_single = false;
    auto* mk = app.add_subcommand("make-model", "write a static model from integer count tables");
    mk->add_option("--tables", mk_tables, "e.g. \"40,10,50;25,25,50;50,25,25\"")->required();
    mk->add_option("--out", mk_out, "model file")->required();
    mk->add_flag("--single", mk_single, "one stationary table instead of a schedule");

    VerifyOptions v_opt;
    auto* verify = app.add_subcommand("verify", "run the security verification harness");
    verify->add_option("--model", v_opt.model_path, "model file");
    verify->add_option("--check", v_opt.check, "kl | rate | baseline | ks | all")
        ->check(CLI::IsMember({"kl", "rate", "baseline", "ks", "all"}));
    verify->add_option("--mode", v_opt.mode, "kl mode")->check(CLI::IsMember({"paper", "prg"}));
    verify->add_option("--lengths", v_opt.lengths, "message lengths for the kl check")->delimiter(',');
    verify->add_option("--prg-n", v_opt.prg_n, "sequence length for prg-mode kl");
    verify->add_option("--symbols", v_opt.symbols, "symbols per rate trial");
    verify->add_option("--trials", v_opt.trials, "rate trials");
    verify->add_option("--e-bits", v_opt.e_bits, "baseline group sizes")->delimiter(',');
    verify->add_option("--groups", v_opt.groups, "baseline groups");
    verify->add_option("--samples", v_opt.samples, "ks sample count");
    verify->add_option("--payload", v_opt.payload, "ks payload bits");
    verify->add_option("--workers", v_opt.workers, "enumeration threads");
    verify->add_option("--out", v_opt.out_path, "write the kl report as TSV");
    auto* v_seed_opt = verify->add_option("--seed", v_opt.seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*embed) return cmd_embed(embed_opt);
        if (*extract) return cmd_extract(x_model, x_in, x_out, x_key);
        if (*mod) return cmd_modulate(m_in, m_out, m_payload, m_method, resolve_seed(m_seed_opt, m_seed));
        if (*demod) return cmd_demodulate(d_in, d_out);
        if (*train) return cmd_train(t_corpus, t_out, t_order, t_alphabet, t_quant);
        if (*mk) return cmd_make_model(mk_tables, mk_out, mk_single);
        if (*verify) {
            v_opt.seed = resolve_seed(v_seed_opt, v_opt.seed);
            return cmd_verify(v_opt);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
