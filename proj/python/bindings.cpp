#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "corpuslens/aspects.hpp"
#include "corpuslens/hdbscan.hpp"
#include "corpuslens/lmm.hpp"
#include "corpuslens/report.hpp"
#include "corpuslens/sentiment.hpp"
#include "corpuslens/stats.hpp"
#include "corpuslens/text.hpp"
#include "corpuslens/topics.hpp"

namespace py = pybind11;
using namespace corpuslens;

namespace {

py::dict score_to_dict(const sentiment::SentimentScore& s) {
    py::dict d;
    d["neg"] = s.neg;
    d["neu"] = s.neu;
    d["pos"] = s.pos;
    d["compound"] = s.compound;
    d["polarity"] = std::string(sentiment::polarity_name(s.polarity));
    return d;
}

py::dict result_to_dict(const stats::TestResult& r) {
    py::dict d;
    d["method"] = r.method;
    d["statistic"] = r.statistic;
    d["p"] = r.p_value;
    if (r.effect_size) {
        d["effect"] = *r.effect_size;
    } else {
        d["effect"] = py::none();
    }
    d["n"] = r.n;
    d["degenerate"] = r.degenerate;
    d["notes"] = r.notes;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "corpuslens core: rule-based sentiment, density clustering and "
              "nonparametric statistics for discussion corpora";

    py::class_<sentiment::Lexicon>(m, "Lexicon")
        .def_static("load_tsv", &sentiment::Lexicon::load_tsv, py::arg("path"))
        .def_static("from_pairs", &sentiment::Lexicon::from_pairs, py::arg("entries"))
        .def("__len__", &sentiment::Lexicon::size)
        .def("__contains__", &sentiment::Lexicon::contains)
        .def("valence", &sentiment::Lexicon::valence, py::arg("token"));

    py::class_<sentiment::SentimentAnalyzer>(m, "SentimentAnalyzer")
        .def(py::init<sentiment::Lexicon>(), py::arg("lexicon"))
        .def(py::init([](const std::string& lexicon_path) {
                 return sentiment::SentimentAnalyzer(sentiment::Lexicon::load_tsv(lexicon_path));
             }),
             py::arg("lexicon_path"))
        .def(
            "polarity_scores",
            [](const sentiment::SentimentAnalyzer& a, const std::string& text) {
                return score_to_dict(a.polarity_scores(text));
            },
            py::arg("text"));

    m.def(
        "classify",
        [](double compound) { return std::string(sentiment::polarity_name(sentiment::classify(compound))); },
        py::arg("compound"));

    m.def("tokenize", [](const std::string& s) { return text::tokenize(s); }, py::arg("text"));

    m.def(
        "match_aspects",
        [](const std::string& text_in,
           const std::optional<aspects::AspectLexicon>& lexicon) {
            return aspects::match_aspects(text_in,
                                          lexicon ? *lexicon : aspects::default_aspect_lexicon());
        },
        py::arg("text"), py::arg("lexicon") = py::none());
    m.def("canonical_aspects", [] { return aspects::canonical_aspects(); });

    m.def(
        "mann_whitney_u",
        [](const std::vector<double>& x, const std::vector<double>& y, bool continuity) {
            return result_to_dict(stats::mann_whitney_u(x, y, continuity));
        },
        py::arg("x"), py::arg("y"), py::arg("continuity") = true);
    m.def(
        "ks_two_sample",
        [](const std::vector<double>& x, const std::vector<double>& y) {
            return result_to_dict(stats::ks_two_sample(x, y));
        },
        py::arg("x"), py::arg("y"));
    m.def(
        "cliffs_delta",
        [](const std::vector<double>& x, const std::vector<double>& y) {
            return stats::cliffs_delta(x, y);
        },
        py::arg("x"), py::arg("y"));
    m.def(
        "wilcoxon_signed_rank",
        [](const std::vector<double>& x, const std::vector<double>& y, const std::string& zeros,
           bool continuity) {
            const auto policy =
                zeros == "pratt" ? stats::ZeroPolicy::Pratt : stats::ZeroPolicy::Drop;
            return result_to_dict(stats::wilcoxon_signed_rank(x, y, policy, continuity));
        },
        py::arg("x"), py::arg("y"), py::arg("zeros") = "drop", py::arg("continuity") = true);
    m.def(
        "kruskal_wallis",
        [](const std::vector<std::vector<double>>& groups) {
            return result_to_dict(stats::kruskal_wallis(groups));
        },
        py::arg("groups"));
    m.def("kruskal_eta_squared", &stats::kruskal_eta_squared, py::arg("h"), py::arg("k"),
          py::arg("n_total"));
    m.def(
        "dunn_posthoc",
        [](const std::vector<std::vector<double>>& groups, const std::vector<std::string>& names) {
            const auto r = stats::dunn_posthoc(groups, names);
            py::dict d;
            d["names"] = r.names;
            d["z"] = r.z;
            d["p_raw"] = r.p_raw;
            d["p_adj"] = r.p_adj;
            return d;
        },
        py::arg("groups"), py::arg("names"));
    m.def("bh_fdr", &stats::bh_fdr, py::arg("p_values"));

    m.def(
        "fit_random_intercept",
        [](const std::vector<double>& y, const std::vector<std::string>& city,
           const std::vector<std::string>& unit, bool reml) {
            lmm::FitOptions opts;
            opts.reml = reml;
            const auto fit = lmm::fit_random_intercept(lmm::make_lmm_data(y, city, unit), opts);
            py::dict d;
            d["var_city"] = fit.var_group;
            d["var_resid"] = fit.var_resid;
            d["icc"] = fit.icc;
            d["lambda"] = fit.lambda;
            d["loglik"] = fit.loglik;
            d["beta"] = fit.beta;
            d["beta_names"] = fit.beta_names;
            d["converged"] = fit.converged;
            d["boundary"] = fit.boundary;
            d["n_cities"] = fit.n_cities;
            d["n_obs"] = fit.n_obs;
            return d;
        },
        py::arg("y"), py::arg("city"), py::arg("unit"), py::arg("reml") = true);
    m.def("icc", &lmm::icc, py::arg("var_group"), py::arg("var_resid"));

    m.def(
        "fallback_embed",
        [](const std::vector<std::string>& texts, int dim, std::uint64_t seed) {
            std::vector<std::string> ids(texts.size());
            for (std::size_t i = 0; i < texts.size(); ++i) ids[i] = std::to_string(i);
            auto fb = topics::fallback_embed(ids, texts, dim, seed);
            return py::make_tuple(fb.matrix.vectors, fb.matrix.doc_ids, fb.skipped);
        },
        py::arg("texts"), py::arg("dim") = 256, py::arg("seed") = 12345);
    m.def(
        "hdbscan_labels",
        [](const Eigen::MatrixXd& points, int min_cluster_size, int min_samples) {
            hdbscan::Params params;
            params.min_cluster_size = min_cluster_size;
            params.min_samples = min_samples;
            const auto res = hdbscan::run(points, params);
            return py::make_tuple(res.labels, res.n_clusters);
        },
        py::arg("points"), py::arg("min_cluster_size") = 15, py::arg("min_samples") = 0);
    m.def(
        "ctfidf_terms",
        [](const std::vector<std::vector<std::string>>& cluster_tokens, std::size_t top_k) {
            const auto per_cluster = topics::ctfidf_terms(cluster_tokens, top_k);
            std::vector<std::vector<std::pair<std::string, double>>> out;
            out.reserve(per_cluster.size());
            for (const auto& terms : per_cluster) {
                std::vector<std::pair<std::string, double>> row;
                row.reserve(terms.size());
                for (const auto& t : terms) row.emplace_back(t.term, t.weight);
                out.push_back(std::move(row));
            }
            return out;
        },
        py::arg("cluster_tokens"), py::arg("top_k") = 10);

    m.def(
        "word_frequencies",
        [](const std::vector<std::string>& texts, const std::vector<std::string>& stopwords) {
            std::unordered_set<std::string> sw(stopwords.begin(), stopwords.end());
            return report::word_frequencies(texts, sw);
        },
        py::arg("texts"), py::arg("stopwords") = std::vector<std::string>{});
}
