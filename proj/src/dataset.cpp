// Copyright 2026 The qkdna Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "qkdna/dataset.hpp"

#include "qkdna/errors.hpp"
#include "qkdna/parallel.hpp"

#include <json.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace qkdna {

namespace {

NucleotideSequence sequence_field(const nlohmann::json &obj, const char *name, std::size_t line) {
    const auto it = obj.find(name);
    if (it == obj.end() || !it->is_string()) {
        throw ParseError(line, std::string("missing string field \"") + name + "\"");
    }
    try {
        return NucleotideSequence(it->get<std::string>());
    } catch (const ValidationError &e) {
        throw ParseError(line, std::string("field \"") + name + "\": " + e.what());
    }
}

std::size_t distance_field(const nlohmann::json &obj, const char *name, std::size_t line) {
    const auto it = obj.find(name);
    if (it == obj.end() || !it->is_number_unsigned()) {
        throw ParseError(line, std::string("missing non-negative integer field \"") + name + "\"");
    }
    return it->get<std::size_t>();
}

double score_field(const nlohmann::json &obj, const char *name, std::size_t line) {
    const auto it = obj.find(name);
    if (it == obj.end() || !it->is_number()) {
        throw ParseError(line, std::string("missing numeric field \"") + name + "\"");
    }
    return it->get<double>();
}

} // namespace

NucleotideSequence random_sequence(Rng &rng, std::size_t length) {
    std::vector<Base> bases(length);
    for (auto &b : bases) {
        b = static_cast<Base>(rng() >> 62);
    }
    return NucleotideSequence(std::move(bases));
}

LabeledTriplet label_triplet(NucleotideSequence a, NucleotideSequence b, NucleotideSequence c,
                             EdmCache &cache) {
    LabeledTriplet t;
    t.d_ab = cache.distance(a, b);
    t.d_ac = cache.distance(a, c);
    t.s_ab = similarity_from_distance(a.size(), t.d_ab);
    t.s_ac = similarity_from_distance(a.size(), t.d_ac);
    t.a = std::move(a);
    t.b = std::move(b);
    t.c = std::move(c);
    return t;
}

std::vector<LabeledTriplet> generate_triplets(const GenerationOptions &opts) {
    if (opts.count == 0) {
        throw ConfigError("triplet count must be >= 1");
    }
    if (opts.length == 0 || opts.length > kMaxEdmLength) {
        throw ConfigError("sequence length must be in [1, " + std::to_string(kMaxEdmLength) +
                          "] for exact labelling, got " + std::to_string(opts.length));
    }
    EdmCache cache(opts.node_budget);
    std::vector<LabeledTriplet> out(opts.count);
    parallel_for(opts.count, opts.jobs, [&](std::size_t i) {
        Rng rng = make_stream(opts.seed, i);
        for (;;) {
            NucleotideSequence a = random_sequence(rng, opts.length);
            NucleotideSequence b = random_sequence(rng, opts.length);
            NucleotideSequence c = random_sequence(rng, opts.length);
            LabeledTriplet t = label_triplet(std::move(a), std::move(b), std::move(c), cache);
            if (t.d_ab != t.d_ac) {
                out[i] = std::move(t);
                return;
            }
        }
    });
    return out;
}

void validate_triplet(const LabeledTriplet &t) {
    const std::size_t n = t.a.size();
    if (n == 0 || t.b.size() != n || t.c.size() != n) {
        throw ValidationError("triplet sequences must share a positive length");
    }
    if (t.d_ab == t.d_ac) {
        throw ValidationError("triplet has tied distances d_ab = d_ac = " + std::to_string(t.d_ab));
    }
    if (t.s_ab != similarity_from_distance(n, t.d_ab)) {
        throw ValidationError("s_ab does not equal (N - d_ab) / N");
    }
    if (t.s_ac != similarity_from_distance(n, t.d_ac)) {
        throw ValidationError("s_ac does not equal (N - d_ac) / N");
    }
}

void write_triplets(std::ostream &out, const std::vector<LabeledTriplet> &triplets) {
    for (const auto &t : triplets) {
        // ordered_json keeps the documented field order stable on disk
        nlohmann::ordered_json obj;
        obj["a"] = t.a.str();
        obj["b"] = t.b.str();
        obj["c"] = t.c.str();
        obj["d_ab"] = t.d_ab;
        obj["d_ac"] = t.d_ac;
        obj["s_ab"] = t.s_ab;
        obj["s_ac"] = t.s_ac;
        out << obj.dump() << '\n';
    }
}

std::vector<LabeledTriplet> read_triplets(std::istream &in) {
    std::vector<LabeledTriplet> out;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (text.empty()) {
            continue;
        }
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error &e) {
            throw ParseError(line, std::string("invalid JSON: ") + e.what());
        }
        if (!obj.is_object()) {
            throw ParseError(line, "record is not a JSON object");
        }
        LabeledTriplet t;
        t.a = sequence_field(obj, "a", line);
        t.b = sequence_field(obj, "b", line);
        t.c = sequence_field(obj, "c", line);
        t.d_ab = distance_field(obj, "d_ab", line);
        t.d_ac = distance_field(obj, "d_ac", line);
        t.s_ab = score_field(obj, "s_ab", line);
        t.s_ac = score_field(obj, "s_ac", line);
        try {
            validate_triplet(t);
        } catch (const ValidationError &e) {
            throw ValidationError("line " + std::to_string(line) + ": " + e.what());
        }
        out.push_back(std::move(t));
    }
    return out;
}

void save_triplets(const std::filesystem::path &path, const std::vector<LabeledTriplet> &triplets) {
    std::ostringstream buf;
    write_triplets(buf, triplets);
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        }
        out << buf.str();
        if (!out) {
            throw std::runtime_error("failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::vector<LabeledTriplet> load_triplets(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return read_triplets(in);
}

std::size_t spot_check_distances(const std::vector<LabeledTriplet> &triplets, std::size_t stride) {
    stride = std::max<std::size_t>(stride, 1);
    std::size_t checked = 0;
    for (std::size_t i = 0; i < triplets.size(); i += stride) {
        const auto &t = triplets[i];
        if (edm_exact(t.a, t.b) != t.d_ab || edm_exact(t.a, t.c) != t.d_ac) {
            throw ValidationError("triplet " + std::to_string(i) +
                                  " has distances that disagree with exact EDM");
        }
        ++checked;
    }
    return checked;
}

std::vector<LabeledPair> training_pairs(const std::vector<LabeledTriplet> &triplets) {
    std::vector<LabeledPair> pairs;
    pairs.reserve(2 * triplets.size());
    for (const auto &t : triplets) {
        pairs.push_back({t.a, t.b, t.s_ab});
        pairs.push_back({t.a, t.c, t.s_ac});
    }
    return pairs;
}

} // namespace qkdna
