#include "support/synthetic.hpp"

#include "kex/strutil.hpp"

#include <array>
#include <random>
#include <sstream>

namespace kex::synthetic {

namespace {

const std::array<std::vector<std::string>, 7> kVocabularies = {{
    {"therapy", "patient", "clinical", "treatment", "symptom", "diagnosis", "recovery", "dosage"},
    {"algorithm", "network", "protocol", "compiler", "software", "hardware", "latency",
     "encryption"},
    {"neuron", "synapse", "cortex", "receptor", "enzyme", "protein", "molecule", "membrane"},
    {"cognition", "behavior", "memory", "attention", "emotion", "perception", "anxiety",
     "motivation"},
    {"concrete", "bridge", "foundation", "seismic", "girder", "asphalt", "masonry", "drainage"},
    {"circuit", "voltage", "amplifier", "transistor", "antenna", "semiconductor", "capacitor",
     "oscillator"},
    {"turbine", "propulsion", "bearing", "gearbox", "actuator", "hydraulic", "fatigue",
     "vibration"},
}};

const std::array<const char*, 7> kDomains = {
    "Medical", "CS", "Biochemistry", "Psychology", "Civil", "ECE", "MAE",
};

const std::array<const char*, 7> kAreas = {
    "Sports Injuries", "Machine Learning", "Enzymology", "Attention",
    "Structures",      "Electricity",      "Fluid Dynamics",
};

std::string csv_quote(const std::string& field) {
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') {
            quoted += "\"\"";
        } else {
            quoted += c;
        }
    }
    quoted += '"';
    return quoted;
}

std::string capitalize(std::string word) {
    if (!word.empty() && word[0] >= 'a' && word[0] <= 'z') {
        word[0] = static_cast<char>(word[0] - 'a' + 'A');
    }
    return word;
}

} // namespace

Fixture make_corpus(const Spec& spec) {
    Fixture fixture;
    fixture.planted.assign(kVocabularies.begin(), kVocabularies.begin() + spec.topics);

    std::mt19937_64 rng(spec.seed);
    std::ostringstream csv;
    csv << "Y1,Y2,Y,Domain,area,keywords,Abstract\n";

    for (int d = 0; d < spec.docs; ++d) {
        const int topic = d % spec.topics;
        fixture.topic_of.push_back(topic);
        const auto& vocab = fixture.planted[static_cast<std::size_t>(topic)];
        const auto pick = [&] { return vocab[rng() % vocab.size()]; };

        const int sentences = 3 + static_cast<int>(rng() % 4);
        std::string abstract;
        for (int s = 0; s < sentences; ++s) {
            switch (rng() % 3) {
            case 0:
                abstract += "The " + pick() + " of the " + pick() + " is the " + pick() +
                            " in the " + pick() + ".";
                break;
            case 1:
                abstract += "This " + pick() + " and that " + pick() + " are within the " + pick() +
                            ".";
                break;
            default:
                abstract += "Some " + pick() + " from the " + pick() + " was the " + pick() +
                            " of each " + pick() + ".";
                break;
            }
            if (s + 1 < sentences) {
                abstract += ' ';
            }
        }

        // Three distinct planted keywords, the first one capitalized.
        std::vector<std::string> keywords;
        while (keywords.size() < 3) {
            const std::string term = pick();
            bool seen = false;
            for (const auto& k : keywords) {
                if (kex::to_lower(k) == term) {
                    seen = true;
                    break;
                }
            }
            if (!seen) {
                keywords.push_back(keywords.empty() ? capitalize(term) : term);
            }
        }
        const std::string raw_keywords =
            keywords[0] + "; " + keywords[1] + "; " + keywords[2];

        const int y2 = topic * 10 + static_cast<int>(rng() % 3);
        const int y = topic * 20 + static_cast<int>(rng() % 5);
        csv << topic << ',' << y2 << ',' << y << ',' << csv_quote(kDomains[topic]) << ','
            << csv_quote(kAreas[topic]) << ',' << csv_quote(raw_keywords) << ','
            << csv_quote(abstract) << '\n';
    }
    fixture.csv = csv.str();
    return fixture;
}

std::string planted_embeddings_tsv(const Fixture& fixture, int dim, double jitter,
                                   std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto uniform = [&] {
        return static_cast<double>(rng()) / static_cast<double>(std::mt19937_64::max()) - 0.5;
    };
    std::ostringstream tsv;
    tsv.precision(9);
    tsv << std::fixed;
    for (std::size_t doc = 0; doc < fixture.topic_of.size(); ++doc) {
        tsv << doc;
        const int topic = fixture.topic_of[doc];
        for (int c = 0; c < dim; ++c) {
            const double base = c == topic ? 1.0 : 0.0;
            tsv << '\t' << base + jitter * uniform();
        }
        tsv << '\n';
    }
    return tsv.str();
}

kex::EmbeddingTable hashed_bow_table(const kex::Corpus& corpus, Eigen::Index dim) {
    kex::EmbeddingTable table;
    table.dim = dim;
    table.vectors = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(corpus.size()), dim);
    for (const auto& rec : corpus.records) {
        const auto row = static_cast<Eigen::Index>(table.doc_ids.size());
        table.doc_ids.push_back(rec.doc_id);
        table.row_of.emplace(rec.doc_id, row);
        // FNV-1a over each lowercase whitespace-run word.
        std::string word;
        const auto feed = [&] {
            if (word.empty()) {
                return;
            }
            std::uint64_t h = 1469598103934665603ULL;
            for (char c : word) {
                h ^= static_cast<unsigned char>(c);
                h *= 1099511628211ULL;
            }
            const auto index = static_cast<Eigen::Index>(h % static_cast<std::uint64_t>(dim));
            const double sign = ((h >> 32) & 1ULL) != 0 ? 1.0 : -1.0;
            table.vectors(row, index) += sign;
            word.clear();
        };
        for (char c : kex::to_lower(rec.abstract)) {
            if (std::isalnum(static_cast<unsigned char>(c)) != 0) {
                word.push_back(c);
            } else {
                feed();
            }
        }
        feed();
        const double norm = table.vectors.row(row).norm();
        if (norm > 0.0) {
            table.vectors.row(row) /= norm;
        }
    }
    return table;
}

} // namespace kex::synthetic
