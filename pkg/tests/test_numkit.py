# tests/test_numkit.py

"""
Code file for TestLayers, TestNetwork, TestAdam, TestCompositeLoss and
TestSnapshot.

Gradients are checked against central finite differences (h = 1e-4) for
every layer type and for two composed multi-view networks.
"""

import unittest

import numpy as np

from mvre.objects.errors import ShapeError, StaleCacheError, DataError, ValidationError
from mvre.objects.strategy import TrainConfig
from mvre.objects.tensor import Tensor
from mvre.services.numkit import (Dense, Conv2D, ReLU, MaxPool2, Flatten, Concat, Identity,
    Network, Node, forward, backward, AdamState, adam_step, composite_loss, to_bytes, from_bytes,
    save_parameters, load_parameters)
from mvre.services.strategies import build_hybrid, build_blackbox
from tests.base_setup import BaseUnitSetup


H = 1e-4


def relative_errors(analytic: np.ndarray, numeric: np.ndarray) -> np.ndarray:
    a, n = analytic.reshape(-1), numeric.reshape(-1)
    return np.abs(a - n) / np.maximum(np.abs(a) + np.abs(n), 1e-6)


def layer_gradcheck(layer, params: dict, inputs: list[np.ndarray], rng) -> np.ndarray:
    """
    Relative errors of every parameter and input gradient of one layer
    under the scalar loss sum(out * G) for a random G.
    """
    out, cache = layer.forward(params, inputs)
    g = rng.normal(size=out.shape)
    dxs, grads = layer.backward(params, cache, g)

    def loss() -> float:
        return float(np.sum(layer.forward(params, inputs)[0] * g))

    errors = []
    for arrays, analytic in ((params, grads), (dict(enumerate(inputs)), dict(enumerate(dxs)))):
        for key, arr in arrays.items():
            numeric = np.zeros_like(arr)
            for i in range(arr.size):
                old = arr.flat[i]
                arr.flat[i] = old + H
                up = loss()
                arr.flat[i] = old - H
                down = loss()
                arr.flat[i] = old
                numeric.flat[i] = (up - down) / (2 * H)
            errors.append(relative_errors(np.asarray(analytic[key]), numeric))
    return np.concatenate(errors)


def network_gradcheck(net: Network, tabular, image, target) -> np.ndarray:
    """ Relative errors of all parameter gradients under the composite loss """
    out, cache = forward(net, tabular=tabular, image=image)
    _, grad = composite_loss(out, target)
    analytic = backward(net, cache, grad)

    def loss() -> float:
        return composite_loss(forward(net, tabular=tabular, image=image)[0], target)[0]

    errors = []
    for tensor, a in zip(net.parameters(), analytic):
        data = tensor.data
        numeric = np.zeros_like(data)
        for i in range(data.size):
            old = data.flat[i]
            data.flat[i] = old + H
            up = loss()
            data.flat[i] = old - H
            down = loss()
            data.flat[i] = old
            numeric.flat[i] = (up - down) / (2 * H)
        errors.append(relative_errors(a.data, numeric))
    return np.concatenate(errors)


class TestLayers(BaseUnitSetup):
    """
    Tests analytic gradients of every layer type against finite differences.
    """

    def assertGradientsMatch(self, errors: np.ndarray, name: str):
        share = float(np.mean(errors <= 1e-4))
        self.assertGreaterEqual(share, 0.99,
            msg=f"{name}: only {share:.2%} of gradients within 1e-4 (max {errors.max():.2e})")
        self.assertLessEqual(float(errors.max()), 1e-3,
            msg=f"{name}: worst relative gradient error {errors.max():.2e}")


    def test_dense_gradients(self):
        """ Dense weight, bias and input gradients """
        # Vars
        rng = np.random.default_rng(0)
        layer = Dense(4, 3)
        params = layer.init_params(rng)
        params["bias"] = rng.normal(size=3)
        x = rng.normal(size=(5, 4))

        # Test
        errors = layer_gradcheck(layer, params, [x], rng)

        # Validate
        self.assertGradientsMatch(errors, "Dense")


    def test_conv2d_gradients(self):
        """ Conv2D gradients, stride 1 and stride 2 """
        for stride in (1, 2):
            # Vars
            rng = np.random.default_rng(stride)
            layer = Conv2D(2, 3, 3, stride)
            params = layer.init_params(rng)
            params["bias"] = rng.normal(size=3)
            x = rng.normal(size=(2, 7, 7, 2))

            # Test
            errors = layer_gradcheck(layer, params, [x], rng)

            # Validate
            self.assertGradientsMatch(errors, f"Conv2D stride {stride}")


    def test_relu_gradients(self):
        """ ReLU input gradients away from the kink """
        # Vars
        rng = np.random.default_rng(3)
        x = rng.normal(size=(4, 6))
        x[np.abs(x) < 0.01] = 0.5

        # Test
        errors = layer_gradcheck(ReLU(), {}, [x], rng)

        # Validate
        self.assertGradientsMatch(errors, "ReLU")


    def test_maxpool_gradients(self):
        """ MaxPool2 routes the gradient to the block maximum (odd sizes drop a row) """
        # Vars
        rng = np.random.default_rng(4)
        x = rng.permutation(2 * 5 * 5 * 2).reshape(2, 5, 5, 2).astype(np.float64) * 0.1

        # Test
        errors = layer_gradcheck(MaxPool2(), {}, [x], rng)

        # Validate
        self.assertGradientsMatch(errors, "MaxPool2")


    def test_shape_layers_gradients(self):
        """ Flatten, Concat and Identity pass gradients through unchanged """
        rng = np.random.default_rng(5)
        cases = [
            ("Flatten", Flatten(), [rng.normal(size=(3, 2, 2, 2))]),
            ("Concat", Concat(), [rng.normal(size=(3, 2)), rng.normal(size=(3, 4))]),
            ("Identity", Identity(), [rng.normal(size=(3, 5))]),
        ]
        for name, layer, inputs in cases:
            self.assertGradientsMatch(layer_gradcheck(layer, {}, inputs, rng), name)


    def test_relu_forward_and_dead_unit(self):
        """ ReLU on [-1, 0, 2] gives [0, 0, 2]; input -1 passes gradient 0 """
        # Test
        out, cache = ReLU().forward({}, [np.array([[-1.0, 0.0, 2.0]])])
        (dx,), _ = ReLU().backward({}, cache, np.ones((1, 3)))

        # Validate
        self.assertAllClose([[0.0, 0.0, 2.0]], out)
        self.assertEqual(0.0, dx[0, 0], msg="Dead unit passed a gradient")


    def test_conv_output_shape(self):
        """ Valid convolution shrinks by kernel - 1 """
        self.assertEqual((30, 30, 8), Conv2D(3, 8, 3).output_shape([(32, 32, 3)]))
        with self.assertRaises(ShapeError):
            Conv2D(3, 8, 3).output_shape([(32, 32, 4)])


class TestNetwork(BaseUnitSetup):
    """
    Tests network wiring, forward values, backward values and the composed
    networks' gradients.
    """

    def single_neuron(self) -> Network:
        net = Network([Node("output", Dense(1, 1), ("tabular",))], "output", {"tabular": (1,)})
        net.set_param("output", "weight", np.array([[2.0]]))
        net.set_param("output", "bias", np.array([1.0]))
        return net


    def test_single_dense_forward_backward(self):
        """ Dense(1,1) w=2 b=1 at x=3 gives 7; upstream 1 gives dw=3, db=1 """
        # Vars
        net = self.single_neuron()

        # Test
        out, cache = forward(net, tabular=np.array([[3.0]]))
        dw, db = backward(net, cache, np.array([1.0]))

        # Validate
        self.assertAllClose([7.0], out.data)
        self.assertAllClose([[3.0]], dw.data)
        self.assertAllClose([1.0], db.data)


    def test_two_branch_sum(self):
        """ Identity(x) and Dense(y) joined by Concat and Dense([1,1], 0) give x + y """
        # Vars
        nodes = [
            Node("tab", Identity(), ("tabular",)),
            Node("flat", Flatten(), ("image",)),
            Node("img", Dense(2, 1), ("flat",)),
            Node("fusion", Concat(), ("tab", "img")),
            Node("output", Dense(2, 1), ("fusion",)),
        ]
        net = Network(nodes, "output", {"tabular": (1,), "image": (1, 1, 2)})
        net.set_param("img", "weight", np.array([[1.0], [1.0]]))
        net.set_param("img", "bias", np.array([0.0]))
        net.set_param("output", "weight", np.array([[1.0], [1.0]]))
        net.set_param("output", "bias", np.array([0.0]))

        # Test
        out, _ = forward(net, tabular=np.array([[3.0]]), image=np.array([[[[1.5, 2.5]]]]))

        # Validate
        self.assertAllClose([7.0], out.data)


    def test_wiring_errors(self):
        """ Cycles, shape mismatches and non-scalar outputs are rejected """
        with self.assertRaises(ShapeError):
            Network([Node("a", Identity(), ("b",)), Node("b", Dense(1, 1), ("a",))], "b",
                {"tabular": (1,)})
        with self.assertRaises(ShapeError):
            Network([Node("output", Dense(3, 1), ("tabular",))], "output", {"tabular": (2,)})
        with self.assertRaises(ShapeError):
            Network([Node("output", Dense(2, 2), ("tabular",))], "output", {"tabular": (2,)})


    def test_stale_cache(self):
        """ A cache from before a parameter update cannot be used """
        # Vars
        net = self.single_neuron()
        _, cache = forward(net, tabular=np.array([[1.0]]))
        net.set_param("output", "bias", np.array([5.0]))

        # Test & Validate
        with self.assertRaises(StaleCacheError):
            backward(net, cache, np.array([1.0]))


    def test_port_shape_mismatch(self):
        with self.assertRaises(ShapeError):
            forward(self.single_neuron(), tabular=np.zeros((2, 3)))


    def test_frozen_node_gets_zero_gradient(self):
        # Vars
        net = self.single_neuron()
        net.freeze("output")

        # Test
        out, cache = forward(net, tabular=np.array([[3.0]]))
        grads = backward(net, cache, np.array([1.0]))

        # Validate
        self.assertTrue(all(np.all(g.data == 0) for g in grads))


    def test_composed_networks_gradients(self):
        """ Hybrid (seed 1) and black-box (seed 2) networks match finite differences """
        for seed, builder in ((1, build_hybrid), (2, build_blackbox)):
            # Vars
            rng = np.random.default_rng(seed)
            config = TrainConfig(image_size=10, penultimate=3, branch_width=5, seed=seed)
            net = builder(4, config)
            tabular = rng.uniform(size=(3, 4))
            image = rng.uniform(size=(3, 10, 10, 3))
            target = rng.normal(size=3) * 3

            # Test
            errors = network_gradcheck(net, tabular, image, target)

            # Validate
            share = float(np.mean(errors <= 1e-4))
            self.assertGreaterEqual(share, 0.99,
                msg=f"{builder.__name__}: {share:.2%} of gradients within 1e-4")


    def test_describe_round_trip(self):
        """ from_description rebuilds an identical architecture with identical init """
        # Vars
        net = build_hybrid(3, TrainConfig(image_size=10, penultimate=2, seed=4))

        # Test
        rebuilt = Network.from_description(net.describe())

        # Validate
        self.assertEqual(net.describe(), rebuilt.describe())
        for a, b in zip(net.parameters(), rebuilt.parameters()):
            self.assertTrue(np.array_equal(a.data, b.data))


class TestAdam(BaseUnitSetup):
    """
    Tests the bias-corrected Adam update.
    """

    def test_first_step_value(self):
        """ param 0, grad 1, lr 1e-3, default betas and eps -> -9.99999995e-4 """
        # Vars
        params = [Tensor.of([0.0])]
        state = AdamState.for_params(params)

        # Test
        new, state = adam_step(params, [Tensor.of([1.0])], state, lr=1e-3)

        # Validate
        self.assertAlmostEqual(-9.99999995e-4, float(new[0].data[0]), places=15)
        self.assertEqual(1, state.t)
        self.assertAlmostEqual(0.1, float(state.m[0][0]))
        self.assertAlmostEqual(0.001, float(state.v[0][0]))


    def test_zero_gradient_fixpoint(self):
        params = [Tensor.of([0.7, -0.2])]
        new, _ = adam_step(params, [Tensor.of([0.0, 0.0])], AdamState.for_params(params))
        self.assertAllClose(params[0].data, new[0].data, atol=0)


    def test_constant_gradient_decreases(self):
        """ Two steps with grad 1 move the parameter strictly down each time """
        # Vars
        params = [Tensor.of([0.0])]
        state = AdamState.for_params(params)

        # Test
        p1, state = adam_step(params, [Tensor.of([1.0])], state)
        p2, state = adam_step(p1, [Tensor.of([1.0])], state)

        # Validate
        self.assertLess(p1[0].data[0], 0.0)
        self.assertLess(p2[0].data[0], p1[0].data[0])


    def test_inputs_not_mutated(self):
        params = [Tensor.of([1.0])]
        state = AdamState.for_params(params)
        adam_step(params, [Tensor.of([1.0])], state)
        self.assertEqual(1.0, params[0].data[0])
        self.assertEqual(0, state.t)


    def test_scale_invariance_without_eps(self):
        """ With eps = 0 the first update magnitude does not depend on gradient scale """
        for c in (1e-3, 1.0, 250.0):
            params = [Tensor.of([0.0, 0.0])]
            new, _ = adam_step(params, [Tensor.of([c, -2 * c])], AdamState.for_params(params),
                lr=0.01, eps=0.0)
            self.assertAllClose([-0.01, 0.01], new[0].data, atol=1e-15, msg=f"scale {c}")


    def test_determinism(self):
        """ Same seed and inputs -> bit-identical parameters after several steps """
        results = []
        for _ in range(2):
            rng = np.random.default_rng(11)
            params = [Tensor(rng.normal(size=(3, 2)))]
            state = AdamState.for_params(params)
            for _ in range(5):
                params, state = adam_step(params, [Tensor(rng.normal(size=(3, 2)))], state)
            results.append(params[0].data.tobytes())
        self.assertEqual(results[0], results[1])


    def test_invalid_hyperparameters(self):
        params = [Tensor.of([0.0])]
        with self.assertRaises(ValidationError):
            adam_step(params, [Tensor.of([1.0])], AdamState.for_params(params), lr=0.0)
        with self.assertRaises(ShapeError):
            adam_step(params, [Tensor.of([1.0, 2.0])], AdamState.for_params(params))


class TestCompositeLoss(BaseUnitSetup):
    """
    Tests the RMSE + MAE loss and its gradient.
    """

    def test_perfect_prediction(self):
        value, grad = composite_loss(np.array([1.0, 2.0]), np.array([1.0, 2.0]))
        self.assertEqual(0.0, value)
        self.assertAllClose([0.0, 0.0], grad.data)


    def test_constant_error(self):
        """ pred [2,2], target [0,0] -> RMSE 2 + MAE 2 = 4 """
        value, _ = composite_loss(np.array([2.0, 2.0]), np.array([0.0, 0.0]))
        self.assertAlmostEqual(4.0, value)


    def test_gradient_matches_finite_differences(self):
        # Vars
        rng = np.random.default_rng(8)
        pred, target = rng.normal(size=6), rng.normal(size=6)

        # Test
        _, grad = composite_loss(pred, target)
        numeric = np.zeros(6)
        for i in range(6):
            up, down = pred.copy(), pred.copy()
            up[i] += H
            down[i] -= H
            numeric[i] = (composite_loss(up, target)[0] - composite_loss(down, target)[0]) / (2 * H)

        # Validate
        self.assertAllClose(numeric, grad.data, atol=1e-7)


    def test_errors(self):
        with self.assertRaises(ValidationError):
            composite_loss(np.array([]), np.array([]))
        with self.assertRaises(ShapeError):
            composite_loss(np.array([1.0]), np.array([1.0, 2.0]))


class TestSnapshot(BaseUnitSetup):
    """
    Tests the binary parameter snapshot.
    """

    def test_file_round_trip(self):
        # Vars
        net = build_blackbox(3, TrainConfig(image_size=10, penultimate=2, branch_width=4, seed=9))
        path = self.root / "params.mvre"

        # Test
        save_parameters(path, net.parameters())
        loaded = load_parameters(path)

        # Validate
        self.assertEqual(len(net.parameters()), len(loaded))
        for a, b in zip(net.parameters(), loaded):
            self.assertEqual(a.shape, b.shape)
            self.assertTrue(np.array_equal(a.data, b.data))


    def test_layout(self):
        """ magic, version, then rank/dims/data per tensor, little-endian """
        blob = to_bytes([Tensor.of([1.0, 2.0], [2])])
        self.assertEqual(b"MVRE", blob[:4])
        self.assertEqual(4 + 4 + 4 + 4 + 16, len(blob))


    def test_bad_blobs(self):
        with self.assertRaises(DataError):
            from_bytes(b"NOPE\x01\x00\x00\x00")
        with self.assertRaises(DataError):
            from_bytes(to_bytes([Tensor.of([1.0, 2.0], [2])])[:-4])


if __name__ == "__main__":
    unittest.main()
