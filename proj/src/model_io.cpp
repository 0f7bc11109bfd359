#include "stegocoder/model_io.hpp"

#include <cstring>
#include <fstream>

#include "stegocoder/error.hpp"

namespace stego {

namespace {

constexpr char kMagic[4] = {'S', 'M', 'M', '1'};
constexpr std::uint32_t kVersion = 1;

enum class Kind : std::uint8_t { static_single = 0, static_schedule = 1, markov = 2 };

struct Writer {
    std::vector<std::uint8_t> out;

    void bytes(const void* p, std::size_t n) {
        const auto* b = static_cast<const std::uint8_t*>(p);
        out.insert(out.end(), b, b + n);
    }
    template <typename T>
    void le(T v) {
        for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
};

struct Reader {
    const std::vector<std::uint8_t>& in;
    std::size_t pos = 0;

    void bytes(void* p, std::size_t n) {
        require(pos + n <= in.size(), Errc::model_io, "model file truncated");
        std::memcpy(p, in.data() + pos, n);
        pos += n;
    }
    template <typename T>
    T le() {
        require(pos + sizeof(T) <= in.size(), Errc::model_io, "model file truncated");
        T v = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(in[pos + i]) << (8 * i);
        pos += sizeof(T);
        return v;
    }
};

void write_table(Writer& w, const FrequencyTable& t) {
    for (std::uint32_t c : t.counts()) w.le<std::uint32_t>(c);
}

FrequencyTable read_table(Reader& r, std::uint32_t alphabet) {
    std::vector<std::uint32_t> counts(alphabet);
    for (auto& c : counts) {
        c = r.le<std::uint32_t>();
        require(c >= 1 && c <= FrequencyTable::kMaxTotal, Errc::model_io, "table count out of range");
    }
    std::uint64_t total = 0;
    for (std::uint32_t c : counts) total += c;
    require(total <= FrequencyTable::kMaxTotal, Errc::model_io, "table total overflows coder contract");
    return FrequencyTable(std::move(counts));
}

} // namespace

std::vector<std::uint8_t> serialize_model(const ConditionalModel& model) {
    Writer w;
    w.bytes(kMagic, 4);
    w.le<std::uint32_t>(kVersion);

    if (const auto* s = dynamic_cast<const StaticModel*>(&model)) {
        w.le<std::uint8_t>(static_cast<std::uint8_t>(s->is_schedule() ? Kind::static_schedule
                                                                      : Kind::static_single));
        w.le<std::uint32_t>(s->alphabet_size());
        w.le<std::uint64_t>(s->tables().size());
        for (const auto& t : s->tables()) write_table(w, t);
        return std::move(w.out);
    }
    if (const auto* m = dynamic_cast<const MarkovModel*>(&model)) {
        w.le<std::uint8_t>(static_cast<std::uint8_t>(Kind::markov));
        w.le<std::uint32_t>(m->alphabet_size());
        w.le<std::uint32_t>(m->order());
        w.le<std::uint32_t>(m->quantization());
        w.le<std::uint8_t>(m->adaptive() ? 1 : 0);
        w.le<std::uint64_t>(m->counts().size());
        for (const auto& [ctx, row] : m->counts()) { // std::map: canonical order
            w.le<std::uint32_t>(static_cast<std::uint32_t>(ctx.size()));
            for (Symbol s : ctx) w.le<std::uint32_t>(s);
            for (std::uint64_t c : row) w.le<std::uint64_t>(c);
        }
        return std::move(w.out);
    }
    raise(Errc::model_io, "unknown model kind");
}

std::unique_ptr<ConditionalModel> deserialize_model(const std::vector<std::uint8_t>& bytes) {
    Reader r{bytes};
    char magic[4];
    r.bytes(magic, 4);
    require(std::memcmp(magic, kMagic, 4) == 0, Errc::model_io, "bad model magic");
    require(r.le<std::uint32_t>() == kVersion, Errc::model_io, "unsupported model version");

    auto kind = static_cast<Kind>(r.le<std::uint8_t>());
    std::uint32_t alphabet = r.le<std::uint32_t>();
    require(alphabet >= 2 && alphabet <= FrequencyTable::kMaxTotal, Errc::model_io,
            "alphabet size out of range");

    switch (kind) {
    case Kind::static_single:
    case Kind::static_schedule: {
        std::uint64_t n = r.le<std::uint64_t>();
        require(n >= 1 && n <= (1u << 20), Errc::model_io, "table count out of range");
        std::vector<FrequencyTable> tables;
        tables.reserve(n);
        for (std::uint64_t i = 0; i < n; ++i) tables.push_back(read_table(r, alphabet));
        require(r.pos == bytes.size(), Errc::model_io, "trailing bytes in model file");
        if (kind == Kind::static_single) {
            require(n == 1, Errc::model_io, "single-table model with multiple tables");
            return std::make_unique<StaticModel>(std::move(tables.front()));
        }
        return std::make_unique<StaticModel>(std::move(tables));
    }
    case Kind::markov: {
        std::uint32_t order = r.le<std::uint32_t>();
        std::uint32_t quant = r.le<std::uint32_t>();
        bool adaptive = r.le<std::uint8_t>() != 0;
        require(order <= 64, Errc::model_io, "model order out of range");
        MarkovModel model(alphabet, order, quant, adaptive);
        std::uint64_t n_ctx = r.le<std::uint64_t>();
        MarkovModel::ContextCounts counts;
        for (std::uint64_t i = 0; i < n_ctx; ++i) {
            std::uint32_t len = r.le<std::uint32_t>();
            require(len <= order, Errc::model_io, "context longer than model order");
            std::vector<Symbol> ctx(len);
            for (auto& s : ctx) s = r.le<std::uint32_t>();
            std::vector<std::uint64_t> row(alphabet);
            for (auto& c : row) c = r.le<std::uint64_t>();
            require(counts.emplace(std::move(ctx), std::move(row)).second, Errc::model_io,
                    "duplicate context record");
        }
        require(r.pos == bytes.size(), Errc::model_io, "trailing bytes in model file");
        model.set_counts(std::move(counts));
        return std::make_unique<MarkovModel>(std::move(model));
    }
    }
    raise(Errc::model_io, "unknown model kind");
}

void save_model(const ConditionalModel& model, const std::string& path) {
    auto bytes = serialize_model(model);
    std::ofstream out(path, std::ios::binary);
    require(out.good(), Errc::model_io, "cannot open model file for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    require(out.good(), Errc::model_io, "write failed: " + path);
}

std::unique_ptr<ConditionalModel> load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), Errc::model_io, "cannot open model file: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize_model(bytes);
}

Sha256Digest model_digest(const ConditionalModel& model) { return sha256(serialize_model(model)); }

Sha256Digest file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), Errc::model_io, "cannot open file: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return sha256(bytes);
}

} // namespace stego
