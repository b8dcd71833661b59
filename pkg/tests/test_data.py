"""
Tests for CSV loading, the preprocessing pipeline, stratified splitting and
the ad-hoc generator.
"""
from math import pi

import numpy as np
import pytest

from qkernel.data import (
    Dataset,
    PreprocessModel,
    apply_pca,
    apply_pipeline,
    apply_rescale,
    apply_standardize,
    class_test_count,
    fit_pca,
    fit_pipeline,
    fit_rescale,
    fit_standardize,
    generate_adhoc,
    load_csv,
    parity_expectation,
    reconstruct_pca,
    save_csv,
    train_test_split,
)
from qkernel.encoding import FeatureMapConfig
from qkernel.errors import (
    ArgumentError,
    DegenerateFeatureError,
    DimensionError,
    GenerationExhaustedError,
    InputError,
    LabelCardinalityError,
    ParseError,
    StratificationError,
)


def write(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text)
    return path


def column(values, name="v"):
    return Dataset(np.asarray(values, dtype=float).reshape(-1, 1), feature_names=[name])


def labelled(n_pos, n_neg, width=2, seed=0):
    g = np.random.default_rng(seed)
    X = g.normal(size=(n_pos + n_neg, width))
    return Dataset(X, np.array([1] * n_pos + [-1] * n_neg))


# =============================================================================
# CSV loading
# =============================================================================

def test_load_named_label_column(fixtures_dir):
    data = load_csv(fixtures_dir / "labels_three_rows.csv", label_column="diagnosis", positive_label="M")
    np.testing.assert_array_equal(data.labels, [1, -1, 1])
    assert data.feature_names == ("radius", "texture")
    np.testing.assert_array_equal(data.features[1], [11.8, 17.4])


def test_load_label_by_index(fixtures_dir):
    data = load_csv(fixtures_dir / "labels_three_rows.csv", label_column=-1, positive_label="B")
    np.testing.assert_array_equal(data.labels, [-1, 1, -1])


def test_load_breast_cancer_fixture(breast_cancer_csv):
    data = load_csv(breast_cancer_csv, label_column="diagnosis", positive_label="M")
    assert data.n_samples == 100
    assert data.n_features == 30
    assert data.class_counts() == {1: 38, -1: 62}


def test_load_whitespace_cells(tmp_path):
    data = load_csv(write(tmp_path, "a, b,label\n 1.5 , 2,1\n3, 4 ,-1\n"))
    np.testing.assert_array_equal(data.features, [[1.5, 2.0], [3.0, 4.0]])
    np.testing.assert_array_equal(data.labels, [1, -1])


def test_missing_file(tmp_path):
    with pytest.raises(InputError):
        load_csv(tmp_path / "absent.csv")


def test_missing_label_column(fixtures_dir):
    with pytest.raises(InputError, match="outcome"):
        load_csv(fixtures_dir / "labels_three_rows.csv", label_column="outcome")


def test_optional_label_column(tmp_path):
    data = load_csv(write(tmp_path, "a,b\n1,2\n3,4\n"), label_optional=True)
    assert not data.has_labels
    assert data.class_counts() == {}


def test_three_label_values(tmp_path):
    with pytest.raises(LabelCardinalityError):
        load_csv(write(tmp_path, "a,label\n1,x\n2,y\n3,z\n"), positive_label="x")


def test_single_label_value(tmp_path):
    path = write(tmp_path, "a,label\n1,1\n2,1\n")
    with pytest.raises(LabelCardinalityError):
        load_csv(path)
    assert load_csv(path, require_both=False).class_counts() == {1: 2, -1: 0}


def test_positive_label_absent(fixtures_dir):
    with pytest.raises(LabelCardinalityError):
        load_csv(fixtures_dir / "labels_three_rows.csv", label_column="diagnosis", positive_label="X")


def test_non_numeric_cell_names_row_and_column(tmp_path):
    with pytest.raises(ParseError, match="row 2, column 'b'"):
        load_csv(write(tmp_path, "a,b,label\n1,2,1\n3,oops,-1\n"))


def test_non_finite_cell(tmp_path):
    with pytest.raises(ParseError):
        load_csv(write(tmp_path, "a,label\ninf,1\n2,-1\n"))


def test_empty_file(tmp_path):
    with pytest.raises(ParseError):
        load_csv(write(tmp_path, ""))


def test_save_then_load_is_exact(tmp_path, breast_cancer_csv):
    data = load_csv(breast_cancer_csv, label_column="diagnosis", positive_label="M")
    scaled = data.with_features(data.features / 7.0, data.feature_names)
    again = load_csv(save_csv(scaled, tmp_path / "out.csv"))
    np.testing.assert_array_equal(again.features, scaled.features)
    np.testing.assert_array_equal(again.labels, scaled.labels)
    assert again.feature_names == scaled.feature_names


def test_load_parses_17_digit_text_exactly(tmp_path, rng):
    values = rng.normal(size=2000) * 10.0 ** rng.integers(-6, 6, size=2000)
    text = "v,label\n" + "".join(f"{v:.17g},1\n" for v in values)
    data = load_csv(write(tmp_path, text), require_both=False)
    np.testing.assert_array_equal(data.features.ravel(), values)


# =============================================================================
# Standardize / PCA / rescale
# =============================================================================

def test_standardize_example():
    model = fit_standardize(column([1, 2, 3]))
    out = apply_standardize(model, column([1, 2, 3]))
    np.testing.assert_allclose(out.features.ravel(), [-1.224744871391589, 0.0, 1.224744871391589], atol=1e-12)


def test_standardize_zero_mean_unit_variance(rng):
    train = Dataset(rng.normal(3, 5, size=(50, 4)))
    out = apply_standardize(fit_standardize(train), train)
    np.testing.assert_allclose(out.features.mean(axis=0), 0, atol=1e-12)
    np.testing.assert_allclose(out.features.std(axis=0), 1, atol=1e-12)


def test_standardize_constant_column_named():
    train = Dataset(np.array([[1.0, 5.0], [2.0, 5.0], [3.0, 5.0]]), feature_names=["ok", "flat"])
    with pytest.raises(DegenerateFeatureError, match="flat"):
        fit_standardize(train)


def test_pca_on_a_line_keeps_everything():
    t = np.linspace(-2, 2, 9)
    train = Dataset(np.column_stack([t, t]))
    model = fit_pca(train, 1)
    assert model.retained_variance == pytest.approx(1, abs=1e-12)
    np.testing.assert_allclose(model.pca_components, [[1 / np.sqrt(2), 1 / np.sqrt(2)]], atol=1e-12)
    restored = reconstruct_pca(model, apply_pca(model, train))
    np.testing.assert_allclose(restored, train.features, atol=1e-12)


def test_pca_full_rank_reconstruction(rng):
    train = Dataset(rng.normal(size=(30, 4)) @ rng.normal(size=(4, 4)))
    model = fit_pca(train, 4)
    restored = reconstruct_pca(model, apply_pca(model, train))
    np.testing.assert_allclose(restored, train.features, atol=1e-10)


def test_pca_components_orthonormal_and_sorted(rng):
    train = Dataset(rng.normal(size=(40, 5)) * [5, 1, 3, 0.5, 2])
    model = fit_pca(train, 3)
    np.testing.assert_allclose(model.pca_components @ model.pca_components.T, np.eye(3), atol=1e-10)
    assert np.all(np.diff(model.explained_variance) <= 0)
    assert 0 < model.retained_variance < 1
    for row in model.pca_components:
        assert row[np.argmax(np.abs(row))] > 0


def test_pca_names_components(rng):
    train = Dataset(rng.normal(size=(10, 3)))
    out = apply_pca(fit_pca(train, 2), train)
    assert list(out.feature_names) == ["pc1", "pc2"]


@pytest.mark.parametrize("k,error", [(3, DimensionError), (0, ArgumentError), (1.5, ArgumentError)])
def test_pca_bad_component_count(rng, k, error):
    with pytest.raises(error):
        fit_pca(Dataset(rng.normal(size=(10, 2))), k)


def test_rescale_example():
    model = fit_rescale(column([0, 5, 10]))
    np.testing.assert_allclose(apply_rescale(model, column([0, 5, 10])).features.ravel(), [-pi, 0, pi], atol=1e-12)


def test_rescale_clamps_and_counts():
    model = fit_rescale(column([0, 5, 10]), lo=0, hi=1)
    out = apply_rescale(model, column([-5, 2.5, 15, 10]))
    np.testing.assert_allclose(out.features.ravel(), [0, 0.25, 1, 1], atol=1e-12)
    assert out.n_clamped == 2


def test_rescale_bad_range():
    with pytest.raises(ArgumentError):
        fit_rescale(column([0, 1]), lo=1, hi=1)


def test_stage_width_mismatch(rng):
    model = fit_standardize(Dataset(rng.normal(size=(5, 3))))
    with pytest.raises(DimensionError):
        apply_standardize(model, Dataset(rng.normal(size=(5, 2))))


def test_pipeline_output_in_range(breast_cancer_csv):
    data = load_csv(breast_cancer_csv, label_column="diagnosis", positive_label="M")
    model = fit_pipeline(data, n_components=2)
    out = apply_pipeline(model, data)
    assert out.n_features == 2
    assert out.features.min() == pytest.approx(-pi, abs=1e-12)
    assert out.features.max() == pytest.approx(pi, abs=1e-12)
    np.testing.assert_array_equal(out.labels, data.labels)


def test_pipeline_fitted_on_train_only(breast_cancer_csv):
    data = load_csv(breast_cancer_csv, label_column="diagnosis", positive_label="M")
    train, test = train_test_split(data, 0.25, seed=3)
    model = fit_pipeline(train, n_components=2)
    np.testing.assert_allclose(model.means, train.features.mean(axis=0), atol=1e-12)
    np.testing.assert_allclose(model.stds, train.features.std(axis=0), atol=1e-12)
    out = apply_pipeline(model, test)
    assert out.n_samples == test.n_samples
    assert np.all((out.features >= -pi) & (out.features <= pi))


def test_standardize_fixture_hygiene(breast_cancer_csv):
    data = load_csv(breast_cancer_csv, label_column="diagnosis", positive_label="M")
    out = apply_standardize(fit_standardize(data), data)
    assert np.abs(out.features.mean(axis=0)).max() <= 1e-12
    assert np.abs(out.features.var(axis=0) - 1).max() <= 1e-12


def test_test_rows_do_not_leak(breast_cancer_csv):
    data = load_csv(breast_cancer_csv, label_column="diagnosis", positive_label="M")
    # the split depends on labels and seed only, so a row-index column finds the test rows
    index = Dataset(np.arange(data.n_samples), data.labels)
    _, test_index = train_test_split(index, 0.25, seed=42)
    mutated = data.features.copy()
    mutated[test_index.features.ravel().astype(int)] += 1000.0

    def prepared_train(d):
        train, _ = train_test_split(d, 0.25, seed=42)
        model = fit_pipeline(train, n_components=2)
        return model, apply_pipeline(model, train)

    model_a, train_a = prepared_train(data)
    model_b, train_b = prepared_train(data.with_features(mutated, data.feature_names))
    assert model_a.to_dict() == model_b.to_dict()
    np.testing.assert_array_equal(train_a.features, train_b.features)


def test_pipeline_is_deterministic(breast_cancer_csv):
    data = load_csv(breast_cancer_csv, label_column="diagnosis", positive_label="M")
    a = apply_pipeline(fit_pipeline(data, 3), data)
    b = apply_pipeline(fit_pipeline(data, 3), data)
    np.testing.assert_array_equal(a.features, b.features)


def test_preprocess_dict_form(breast_cancer_csv):
    data = load_csv(breast_cancer_csv, label_column="diagnosis", positive_label="M")
    model = fit_pipeline(data, 2)
    again = PreprocessModel.from_dict(model.to_dict())
    np.testing.assert_array_equal(apply_pipeline(again, data).features, apply_pipeline(model, data).features)


# =============================================================================
# Stratified split
# =============================================================================

@pytest.mark.parametrize("n,f,expected", [(25, 0.2, 5), (10, 0.25, 3), (3, 0.01, 1), (3, 0.99, 2)])
def test_class_test_count(n, f, expected):
    assert class_test_count(n, f) == expected


def test_split_counts_per_class():
    train, test = train_test_split(labelled(25, 25), 0.2, seed=1)
    assert test.class_counts() == {1: 5, -1: 5}
    assert train.class_counts() == {1: 20, -1: 20}


def test_split_is_a_partition():
    data = labelled(12, 9)
    train, test = train_test_split(data, 0.3, seed=4)
    rows = np.vstack([train.features, test.features])
    assert rows.shape == data.features.shape
    assert sorted(map(tuple, rows)) == sorted(map(tuple, data.features))


def test_split_deterministic_per_seed():
    data = labelled(20, 20)
    a = train_test_split(data, 0.25, seed=9)
    b = train_test_split(data, 0.25, seed=9)
    c = train_test_split(data, 0.25, seed=10)
    np.testing.assert_array_equal(a[1].features, b[1].features)
    assert not np.array_equal(a[1].features, c[1].features)


@pytest.mark.parametrize("f", [0, 1, -0.1])
def test_split_fraction_bounds(f):
    with pytest.raises(ArgumentError):
        train_test_split(labelled(5, 5), f)


def test_split_needs_two_per_class():
    with pytest.raises(StratificationError):
        train_test_split(labelled(5, 1), 0.2)


def test_split_preserves_class_balance(breast_cancer_csv):
    data = load_csv(breast_cancer_csv, label_column="diagnosis", positive_label="M")
    train, test = train_test_split(data, 0.25, seed=0)
    assert test.class_counts() == {1: 10, -1: 16}
    assert train.class_counts() == {1: 28, -1: 46}


# =============================================================================
# Ad-hoc generator
# =============================================================================

@pytest.mark.parametrize("n_qubits", [2, 3])
def test_adhoc_gap_and_balance(n_qubits):
    config = FeatureMapConfig(n_qubits, depth=2)
    train, test = generate_adhoc(6, 4, 0.3, config, seed=5)
    assert train.class_counts() == {1: 6, -1: 6}
    assert test.class_counts() == {1: 4, -1: 4}
    for part in (train, test):
        values = parity_expectation(part.features, config)
        assert np.all(np.abs(values) >= 0.3)
        np.testing.assert_array_equal(np.where(values > 0, 1, -1), part.labels)
        assert np.all((part.features >= 0) & (part.features < 2 * pi))
    assert list(train.feature_names) == [f"x{i}" for i in range(n_qubits)]


def test_adhoc_deterministic():
    config = FeatureMapConfig(2, depth=2)
    a, _ = generate_adhoc(3, 2, 0.2, config, seed=11)
    b, _ = generate_adhoc(3, 2, 0.2, config, seed=11)
    np.testing.assert_array_equal(a.features, b.features)


def test_adhoc_rejects_depth_one():
    with pytest.raises(ArgumentError):
        generate_adhoc(2, 2, 0.1, FeatureMapConfig(2, depth=1))


@pytest.mark.parametrize("n_qubits", [1, 4])
def test_adhoc_rejects_qubit_count(n_qubits):
    with pytest.raises(ArgumentError):
        generate_adhoc(2, 2, 0.1, FeatureMapConfig(n_qubits, depth=2))


def test_adhoc_rejects_bad_gap():
    with pytest.raises(ArgumentError):
        generate_adhoc(2, 2, 0.0, FeatureMapConfig(2, depth=2))


def test_adhoc_exhaustion(monkeypatch):
    monkeypatch.setattr("qkernel.data.adhoc.MAX_CANDIDATES", 1024)
    # parity expectations never exceed 1 in magnitude
    with pytest.raises(GenerationExhaustedError, match="smaller gap"):
        generate_adhoc(2, 2, 1.5, FeatureMapConfig(2, depth=2))


@pytest.mark.slow
def test_adhoc_separable_by_quantum_kernel():
    from qkernel.svm import KernelKind, KernelSpec, TrainConfig, fit, predict

    config = FeatureMapConfig(2, depth=2)
    train, test = generate_adhoc(10, 5, 0.3, config, seed=0)
    model, _ = fit(KernelSpec(KernelKind.QUANTUM, feature_map=config), train.features, train.labels, TrainConfig(C=10.0))
    accuracy = np.mean(predict(model, test.features) == test.labels)
    assert accuracy >= 0.9
