// Python surface for the coding library: models, both coder engines, the
// latent mapper, and the verification harness entry points.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <random>

#include "stegocoder/baseline.hpp"
#include "stegocoder/bounds.hpp"
#include "stegocoder/coder.hpp"
#include "stegocoder/ks.hpp"
#include "stegocoder/latent.hpp"
#include "stegocoder/model_io.hpp"
#include "stegocoder/normal.hpp"
#include "stegocoder/toy_flow.hpp"

namespace py = pybind11;
using namespace stego;

namespace {

TerminationMode parse_mode(const std::string& mode) {
    if (mode == "paper") return TerminationMode::paper;
    if (mode == "prg") return TerminationMode::prg_padding;
    raise(Errc::invalid_argument, "mode must be 'paper' or 'prg'");
}

CoderEngine parse_engine(const std::string& engine) {
    if (engine == "fixed") return CoderEngine::fixed;
    if (engine == "exact") return CoderEngine::exact;
    raise(Errc::invalid_argument, "engine must be 'fixed' or 'exact'");
}

StegoSequence embed_bits(const ConditionalModel& model, const Bits& message, const std::string& mode,
                         const std::string& engine, std::uint64_t n_target, const std::string& key,
                         std::uint64_t max_symbols) {
    EmbedRequest req;
    req.mode = parse_mode(mode);
    req.max_symbols = max_symbols;
    if (req.mode == TerminationMode::prg_padding) {
        require(n_target > 0, Errc::invalid_argument, "prg mode requires n_target > 0");
        req.n_target = n_target;
        auto ks = std::make_shared<Keystream>(key, "pad");
        BitSource source(message, [ks] { return ks->next_bit(); });
        return embed_aad(source, message.size(), model, req, parse_engine(engine)).symbols;
    }
    BitSource source(message);
    return embed_aad(source, message.size(), model, req, parse_engine(engine)).symbols;
}

Bits extract_bits(const ConditionalModel& model, const StegoSequence& symbols, std::uint64_t length,
                  const std::string& mode, const std::string& engine) {
    return extract_aae(symbols, model, length, parse_mode(mode), {}, parse_engine(engine));
}

LatentVector py_modulate(const Bits& message, unsigned payload, std::uint64_t seed,
                         const std::string& method) {
    IntervalPartition part(payload);
    std::mt19937_64 rng(seed);
    return modulate(message, part, rng,
                    method == "rejection" ? ModulationMethod::rejection : ModulationMethod::inverse_cdf);
}

Bits py_demodulate(const LatentVector& coords, unsigned payload) {
    return demodulate(coords, IntervalPartition(payload));
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "steganographic coding over explicit probability models";

    py::register_exception<Error>(m, "StegoError");

    py::class_<FrequencyTable>(m, "FrequencyTable")
        .def(py::init<std::vector<std::uint32_t>>(), py::arg("counts"))
        .def_property_readonly("counts", &FrequencyTable::counts)
        .def_property_readonly("total", &FrequencyTable::total)
        .def_property_readonly("alphabet_size", &FrequencyTable::alphabet_size)
        .def("cumulative", &FrequencyTable::cumulative, py::arg("j"))
        .def("__eq__", [](const FrequencyTable& a, const FrequencyTable& b) { return a == b; });

    m.def("quantize", &quantize, py::arg("probs"), py::arg("budget"),
          "largest-remainder quantization of probabilities to integer counts");
    m.def("quantize_counts", &quantize_counts, py::arg("counts"), py::arg("budget"));

    py::class_<ConditionalModel>(m, "ConditionalModel")
        .def_property_readonly("alphabet_size", &ConditionalModel::alphabet_size)
        .def(
            "next_distribution",
            [](const ConditionalModel& model, const std::vector<Symbol>& history, const ContextTag& tag) {
                return model.next_distribution(history, tag);
            },
            py::arg("history"), py::arg("tag") = ContextTag{});

    py::class_<StaticModel, ConditionalModel>(m, "StaticModel")
        .def(py::init<FrequencyTable>(), py::arg("table"))
        .def(py::init<std::vector<FrequencyTable>>(), py::arg("schedule"));

    py::class_<MarkovModel, ConditionalModel>(m, "MarkovModel")
        .def(py::init<std::uint32_t, std::uint32_t, std::uint32_t, bool>(), py::arg("alphabet_size"),
             py::arg("order"), py::arg("quantization") = MarkovModel::kDefaultQuantization,
             py::arg("adaptive") = true)
        .def_property_readonly("order", &MarkovModel::order)
        .def("raw_count", &MarkovModel::raw_count, py::arg("context"), py::arg("next"));

    m.def("train_markov", &train_markov, py::arg("corpus"), py::arg("alphabet_size"), py::arg("order"),
          py::arg("quantization") = MarkovModel::kDefaultQuantization);
    m.def("save_model", &save_model, py::arg("model"), py::arg("path"));
    m.def("load_model", &load_model, py::arg("path"));
    m.def("model_digest_hex",
          [](const ConditionalModel& model) { return to_hex(model_digest(model)); });

    m.def("embed", &embed_bits, py::arg("model"), py::arg("message_bits"), py::arg("mode") = "paper",
          py::arg("engine") = "fixed", py::arg("n_target") = 0, py::arg("key") = std::string{},
          py::arg("max_symbols") = std::uint64_t{1} << 22,
          "embed message bits into a stego symbol sequence");
    m.def("extract", &extract_bits, py::arg("model"), py::arg("symbols"), py::arg("length"),
          py::arg("mode") = "paper", py::arg("engine") = "fixed",
          "recover the first `length` message bits from a stego sequence");

    m.def("normal_cdf", &normal_cdf, py::arg("x"));
    m.def("normal_ppf", &normal_ppf, py::arg("u"));
    m.def(
        "partition_boundaries",
        [](unsigned payload) { return IntervalPartition(payload).interior(); }, py::arg("payload"),
        "interior cell boundaries (ppf of i/2^p)");
    m.def("modulate", &py_modulate, py::arg("message_bits"), py::arg("payload"), py::arg("seed") = 0,
          py::arg("method") = "inverse-cdf");
    m.def("demodulate", &py_demodulate, py::arg("coordinates"), py::arg("payload"));

    py::class_<ToyFlow>(m, "ToyFlow")
        .def(py::init<std::size_t, std::uint64_t>(), py::arg("dim"), py::arg("seed") = 0x5eed)
        .def_property_readonly("dim", &ToyFlow::dim)
        .def("generate", &ToyFlow::generate, py::arg("z"))
        .def("invert", &ToyFlow::invert, py::arg("x"));

    py::class_<KsResult>(m, "KsResult")
        .def_readonly("statistic", &KsResult::statistic)
        .def_readonly("p_value", &KsResult::p_value);
    m.def("ks_normal_test", &ks_normal_test, py::arg("samples"));

    py::class_<BoundReport>(m, "BoundReport")
        .def_readonly("L", &BoundReport::L)
        .def_readonly("n", &BoundReport::n)
        .def_readonly("kl_value", &BoundReport::kl_value)
        .def_readonly("bound", &BoundReport::bound)
        .def_readonly("satisfied", &BoundReport::satisfied)
        .def_readonly("kl_total", &BoundReport::kl_total)
        .def_readonly("coverage", &BoundReport::coverage)
        .def_readonly("min_length", &BoundReport::min_length)
        .def_readonly("max_length", &BoundReport::max_length)
        .def_readonly("support", &BoundReport::support);
    m.def(
        "verify_kl_bound",
        [](const ConditionalModel& model, const std::vector<std::uint64_t>& lengths,
           const std::string& mode, unsigned workers, std::uint64_t prg_n) {
            return verify_kl_bound(model, lengths, parse_mode(mode), {}, workers, prg_n);
        },
        py::arg("model"), py::arg("lengths"), py::arg("mode") = "paper", py::arg("workers") = 1,
        py::arg("prg_n") = 0);

    py::class_<EntropyEstimate>(m, "EntropyEstimate")
        .def_readonly("bits_per_symbol", &EntropyEstimate::bits_per_symbol)
        .def_readonly("standard_error", &EntropyEstimate::standard_error);
    m.def(
        "entropy_rate",
        [](const ConditionalModel& model, std::uint64_t horizon, std::uint64_t trials,
           std::uint64_t seed) { return entropy_rate(model, horizon, trials, seed); },
        py::arg("model"), py::arg("horizon"), py::arg("trials"), py::arg("seed") = 0);

    py::class_<RateReport>(m, "RateReport")
        .def_readonly("mean_rate", &RateReport::mean_rate)
        .def_readonly("standard_error", &RateReport::standard_error)
        .def_readonly("entropy", &RateReport::entropy)
        .def_readonly("within_bounds", &RateReport::within_bounds);
    m.def(
        "rate_report",
        [](const ConditionalModel& model, std::uint64_t n_symbols, std::uint64_t trials,
           std::uint64_t seed) { return rate_report(model, n_symbols, trials, seed); },
        py::arg("model"), py::arg("n_symbols"), py::arg("trials"), py::arg("seed") = 0);

    py::class_<BaselineEmbedResult>(m, "BaselineEmbedResult")
        .def_readonly("objects", &BaselineEmbedResult::objects)
        .def_readonly("total_draws", &BaselineEmbedResult::total_draws)
        .def_readonly("mean_draws_per_group", &BaselineEmbedResult::mean_draws_per_group);
    m.def(
        "rejection_sample_embed",
        [](const std::string& key, const Bits& message, unsigned e_bits, std::uint64_t seed,
           std::uint64_t max_draws) {
            auto rng = std::make_shared<std::mt19937_64>(seed);
            return rejection_sample_embed(key, message, e_bits, [rng] { return (*rng)(); }, max_draws);
        },
        py::arg("key"), py::arg("message_bits"), py::arg("e_bits"), py::arg("seed") = 0,
        py::arg("max_draws_per_group") = std::uint64_t{1} << 20);
    m.def("rejection_sample_extract", &rejection_sample_extract, py::arg("key"), py::arg("objects"),
          py::arg("e_bits"));

#ifdef VERSION_INFO
#define STR2(x) #x
#define STR(x) STR2(x)
    m.attr("__version__") = STR(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
