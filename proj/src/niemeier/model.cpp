#include "nv/niemeier.hpp"

namespace nv {

namespace {

int rank_of(LabelModel id) {
    switch (id) {
        case LabelModel::N23: return 1;
        case LabelModel::N22: return 2;
        case LabelModel::N21: return 3;
        default: throw construction_error("no Niemeier lattice for label model " + model_name(id));
    }
}

IntMatrix cartan_blocks(int comps, int r) {
    IntMatrix a(comps * r, comps * r);
    for (int c = 0; c < comps; ++c)
        for (int i = 0; i < r; ++i) {
            a(c * r + i, c * r + i) = 2;
            if (i + 1 < r) a(c * r + i, c * r + i + 1) = a(c * r + i + 1, c * r + i) = -1;
        }
    return a;
}

}  // namespace

std::string code_file_for(LabelModel id) {
    switch (id) {
        case LabelModel::N23: return "golay24.json";
        case LabelModel::N22: return "ternary_golay12.json";
        case LabelModel::N21: return "octacode.json";
        default: throw construction_error("no glue code for label model " + model_name(id));
    }
}

std::vector<Int> NiemeierModel::root_vector(int label) const {
    std::vector<Int> v(kDegree, 0);
    v[label] = denom();
    return v;
}

IntMatrix NiemeierModel::root_vectors(const std::vector<int>& labels) const {
    IntMatrix m(labels.size(), kDegree);
    for (std::size_t i = 0; i < labels.size(); ++i) m(i, labels[i]) = denom();
    return m;
}

NiemeierModel build_niemeier(LabelModel id, const std::filesystem::path& data_dir) {
    NiemeierModel model;
    model.id = id;
    model.comp_rank = rank_of(id);
    model.components = kDegree / model.comp_rank;
    model.code = load_code(data_dir / "codes" / code_file_for(id));
    const int r = model.comp_rank, d = model.denom();
    if (model.code.length != model.components || model.code.m != d)
        throw construction_error("glue code " + model.code.name + " does not fit " + model_name(id));

    // fundamental weight w1 of A_r in simple-root coordinates, times r + 1
    std::vector<int> glue(r);
    for (int i = 0; i < r; ++i) glue[i] = r - i;

    IntMatrix gens(kDegree + model.code.rows.size(), kDegree);
    for (int i = 0; i < kDegree; ++i) gens(i, i) = d;
    for (std::size_t k = 0; k < model.code.rows.size(); ++k)
        for (int c = 0; c < model.components; ++c)
            for (int i = 0; i < r; ++i) gens(kDegree + k, c * r + i) = model.code.rows[k][c] * glue[i];

    model.lattice.ambient_dim = kDegree;
    model.lattice.denom = d;
    model.lattice.ambient_gram = cartan_blocks(model.components, r);
    model.lattice.sign = SignModel::negative;
    model.lattice.basis = hermite_normal_form(gens);

    if (model.lattice.rank() != static_cast<std::size_t>(kDegree)) throw construction_error("glued lattice is not of rank 24");
    IntMatrix g = model.lattice.gram();
    if (!is_even(g)) throw construction_error("glued lattice is not even");
    Int det = determinant(g);
    if (det != 1) throw construction_error("glued lattice has determinant " + det.get_str());
    return model;
}

std::size_t count_roots(const NiemeierModel& model) {
    return short_vectors(model.lattice, 2, {.both_signs = true}).size();
}

IntMatrix permutation_matrix(const NiemeierModel& model, const Permutation& p) {
    IntMatrix P(kDegree, kDegree);
    for (int i = 0; i < kDegree; ++i) P(i, p(i)) = 1;
    if (P * model.lattice.ambient_gram * P.transpose() != model.lattice.ambient_gram)
        throw lift_error("permutation " + p.to_string(model.id) + " does not respect the simple-root chains");
    return P;
}

std::optional<IntMatrix> lift_permutation(const NiemeierModel& model, const Permutation& p) {
    IntMatrix P = permutation_matrix(model, p);
    try {
        induced_action(model.lattice, P);
    } catch (const isometry_error&) {
        return std::nullopt;
    }
    return P;
}

MonomialMap component_action(const NiemeierModel& model, const Permutation& p) {
    permutation_matrix(model, p);  // structure check
    const int r = model.comp_rank;
    MonomialMap m;
    m.perm.resize(model.components);
    m.sign.resize(model.components);
    for (int c = 0; c < model.components; ++c) {
        int first = p(c * r);
        m.perm[c] = first / r;
        m.sign[c] = (r == 1 || first % r == 0) ? 1 : -1;
    }
    return m;
}

Alignment Alignment::identity(const NiemeierModel& model) {
    Alignment a;
    for (int c = 0; c < model.components; ++c) {
        a.component.push_back(c);
        a.sign.push_back(1);
    }
    return a;
}

int Alignment::apply_label(const NiemeierModel& model, int source_label) const {
    const int r = model.comp_rank;
    int c = source_label / r, i = source_label % r;
    return component[c] * r + (sign[c] > 0 ? i : r - 1 - i);
}

Permutation Alignment::label_map(const NiemeierModel& model) const {
    std::vector<int> img(kDegree);
    for (int l = 0; l < kDegree; ++l) img[l] = apply_label(model, l);
    return Permutation::from_images(img);
}

Permutation Alignment::apply(const NiemeierModel& model, const Permutation& source) const {
    Permutation s = label_map(model);
    return s.inverse() * source * s;
}

}  // namespace nv
