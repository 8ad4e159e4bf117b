# mvre/objects/config.py

"""
Code file to house Config class.
"""

# Default libs
import argparse, hashlib, json, os
from pathlib import Path
from typing import Any

# Deps from this project
from .app_context import AppContext
from .errors import ValidationError
from ..utilities.logging_utility import Logger


# Environment variables and the config keys they feed
ENV_KEYS: dict[str, str] = {
    "MVRE_TILE_ENDPOINT": "tile_endpoint",
    "MVRE_OUT": "out",
}

# Keys that change training or evaluation results. Everything in here goes into
# the config digest printed in manifests and reports.
RESULT_KEYS: tuple[str, ...] = (
    "lr", "beta1", "beta2", "eps", "batch", "epochs", "patience",
    "penultimate", "branch_width", "image_size", "tile_level",
    "n_trees", "max_depth", "min_leaf", "max_features",
    "train_fraction", "split", "no_image_branch",
)


class Config:
    def __init__(self, ctx: AppContext, args: argparse.Namespace):
        """
        Config declared here from lowest to highest priority.
        Initializer to build the four layers of config.
        """
        self.defaults: dict[str, Any] = self._build_default_config()
        self.user_cfg: dict[str, Any] = self._build_user_config(ctx)
        self.env_cfg: dict[str, Any] = self._build_env_config()
        self.cli: dict[str, Any] = vars(args)


        # Disable user-level configuration if --no-config is used
        if self.cli.get("no_config"):
            self.user_cfg = {}


    def _build_user_config(self, ctx: AppContext) -> dict[str, Any]:
        """
        Returns a dict of the user config, if available.
        """

        config_path = Config._get_user_config_path()

        # Make sure the configuration file has been setup
        if not config_path.exists(): return {}

        try:
            with open(config_path, "r", encoding="utf-8") as file:
                user_cfg = json.load(file)
        except json.JSONDecodeError as e:
            raise ValidationError(f"Could not parse {config_path}: {e}") from e

        unknown = set(user_cfg) - set(self.defaults)
        if unknown:
            ctx.logger.log(Logger.WARNING,
                f"Ignoring unknown keys in {config_path}: {sorted(unknown)}")

        return {k: v for k, v in user_cfg.items() if k in self.defaults}


    @staticmethod
    def _build_env_config() -> dict[str, Any]:
        """ Returns the config values overridden through environment variables """
        return {key: os.environ[var] for var, key in ENV_KEYS.items() if os.environ.get(var)}


    def _get(self, key: str) -> Any:
        """
        Returns the value of the key with the following precedence:

        Precedence: CLI > env > user > defaults
        """

        if self.cli.get(key) is not None:
            return self.cli[key]
        if key in self.env_cfg:
            return self.env_cfg[key]
        if key in self.user_cfg:
            return self.user_cfg[key]
        if key in self.defaults:
            return self.defaults[key]

        raise KeyError(key)


    def __getattr__(self, name: str) -> Any:
        """
        Allow attribute-style access:
        cfg.n_trees converted to cfg._get("n_trees")
        """
        if name.startswith("__") or name in ("defaults", "user_cfg", "env_cfg", "cli"):
            raise AttributeError(name)
        try:
            return self._get(name)
        except KeyError:
            raise AttributeError(f"'Config' object has no attribute '{name}'")


    def get(self, key: str, default: Any = None) -> Any:
        try:
            return self._get(key)
        except KeyError:
            return default


    def resolved(self) -> dict[str, Any]:
        """ Every default key with its effective value """
        return {key: self._get(key) for key in self.defaults}


    def digest(self) -> str:
        """
        Short sha256 over every result-affecting value. Two runs with the same
        digest, seed and data produce the same numbers.
        """
        payload = {key: self._get(key) for key in RESULT_KEYS}
        blob = json.dumps(payload, sort_keys=True, default=str).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()[:16]


    @staticmethod
    def _build_default_config() -> dict[str, Any]:
        """
        Returns the default configuration values.

        NOTE: the optimizer settings, batch size and schedule are not published
        for the reference experiments; these are the usual Adam defaults.
        """

        return {
            # Optimizer & training loop
            "lr": 1e-3,
            "beta1": 0.9,
            "beta2": 0.999,
            "eps": 1e-8,
            "batch": 32,
            "epochs": 80,
            "patience": None,

            # Architecture
            "penultimate": 16,
            "branch_width": 64,
            "image_size": 32,
            "tile_level": 16,

            # Forest
            "n_trees": 50,
            "max_depth": 12,
            "min_leaf": 2,
            "max_features": None,

            # Splits
            "train_fraction": 0.8,
            "split": "random",
            "no_image_branch": False,

            # Tile acquisition
            "tile_endpoint": "",
            "retries": 3,
            "backoff": 0.5,
            "fetch_workers": 4,
            "tile_cache": "",

            # Run control
            "out": "mvre-out",
            "jobs": 1,
            "format": "md",
            "seed": 7,
            "verbose": False,
        }


    @staticmethod
    def _get_user_config_path() -> Path:
        """ Return the default user config path for mvre """
        return Path(".mvre/config.json")


    @staticmethod
    def create_default_config(ctx: AppContext) -> Path:
        """
        Creates a default config.json file with all defaults.
        """
        config_path = Config._get_user_config_path()
        config_path.parent.mkdir(exist_ok=True, parents=True)

        config = Config._build_default_config()
        del config["verbose"]       # cli only

        if config_path.exists(): ctx.logger.log(Logger.WARNING,
            "Config file already exists. This will be overriden.")

        with open(config_path, 'w', encoding='utf-8') as f:
            json.dump(config, f, indent=4, ensure_ascii=False)
            f.write('\n')

        ctx.logger.log(Logger.DEBUG, f"Created config.json at {config_path.absolute()}")
        return config_path
