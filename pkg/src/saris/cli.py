"""Command-line entry points.

Four subcommands: serve (run the HTTP service), export (write the derived
dataset CSV), train (fit a tree from a CSV), predict (classify a feature
vector with a saved model). Settings resolve as CLI flag, then SARIS_*
environment variable, then JSON config file, then built-in default.

Exit codes: 0 success, 1 user error, 2 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from . import c45, dataset
from .errors import SarisError
from .storage import EntityStore

_DEFAULTS = {
    "port": 8000,
    "host": "127.0.0.1",
    "store": "saris-store.json",
    "seed_dir": None,
    "accounts": None,
    "ui_dir": None,
    "out": None,
    "min_leaf": 2,
    "confidence": 0.25,
}


def _load_config_file(explicit: Optional[str]) -> dict[str, Any]:
    path = explicit or os.environ.get("SARIS_CONFIG")
    if not path:
        return {}
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise SarisError(f"config file not found: {path}") from None
    except json.JSONDecodeError as error:
        raise SarisError(f"config file is not valid JSON: {error}") from None


def resolve_setting(name: str, cli_value: Any, config: dict[str, Any]) -> Any:
    """flag > SARIS_<NAME> env > config file > default."""
    if cli_value is not None:
        return cli_value
    env_value = os.environ.get(f"SARIS_{name.upper()}")
    if env_value is not None:
        default = _DEFAULTS.get(name)
        if isinstance(default, int) and not isinstance(default, bool):
            return int(env_value)
        if isinstance(default, float):
            return float(env_value)
        return env_value
    if name in config:
        return config[name]
    return _DEFAULTS.get(name)


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .api import create_app, seed_accounts

    config = _load_config_file(args.config)
    store_path = resolve_setting("store", args.store, config)
    seed_dir = resolve_setting("seed_dir", args.seed_dir, config)
    accounts = resolve_setting("accounts", args.accounts, config)
    port = resolve_setting("port", args.port, config)
    host = resolve_setting("host", args.host, config)
    ui_dir = resolve_setting("ui_dir", args.ui_dir, config)

    store = EntityStore(store_path)
    if seed_dir:
        counts = store.seed_from_dir(seed_dir)
        print(f"seeded {sum(counts.values())} records from {seed_dir}")
    if accounts:
        n = seed_accounts(store, accounts)
        print(f"provisioned {n} accounts from {accounts}")
    app = create_app(store, static_dir=ui_dir)
    uvicorn.run(app, host=host, port=int(port))
    return 0


def _cmd_export(args: argparse.Namespace) -> int:
    config = _load_config_file(args.config)
    store_path = resolve_setting("store", args.store, config)
    out = resolve_setting("out", args.out, config)
    if not Path(store_path).exists():
        raise SarisError(f"store file not found: {store_path}")
    store = EntityStore(store_path)
    payload = dataset.export_csv(dataset.derive_dataset(store))
    if out:
        Path(out).write_bytes(payload)
        print(f"wrote {out}")
    else:
        sys.stdout.write(payload.decode("ascii"))
    return 0


def _cmd_train(args: argparse.Namespace) -> int:
    config = _load_config_file(args.config)
    rows = dataset.read_csv(args.data)
    training = c45.TrainingSet.from_dataset_rows(rows)
    train_config = c45.TrainConfig(
        min_leaf=int(resolve_setting("min_leaf", args.min_leaf, config)),
        confidence_factor=float(resolve_setting("confidence", args.confidence, config)),
        pruning=not args.no_prune,
    )
    tree = c45.build_tree(training, train_config)
    metrics = c45.evaluate(tree, training)
    text = c45.to_text(tree)
    out = resolve_setting("out", args.out, config)
    if out:
        Path(out).write_text(text)
        print(f"wrote model to {out}")
    else:
        sys.stdout.write(text)
    print(f"rows={metrics.n} nodes={c45.node_count(tree.root)} "
          f"depth={c45.depth(tree.root)} training_accuracy={metrics.accuracy:.4f}")
    return 0


def _cmd_predict(args: argparse.Namespace) -> int:
    tree = c45.load_model(args.model, dataset.FEATURE_NAMES)
    parts = args.features.split(",")
    if len(parts) != len(dataset.FEATURE_NAMES):
        raise SarisError(
            f"--features needs {len(dataset.FEATURE_NAMES)} comma-separated counts"
        )
    try:
        features = [float(p) for p in parts]
    except ValueError:
        raise SarisError(f"features must be numeric, got {args.features!r}") from None
    label, confidence = c45.predict(tree, features)
    print(json.dumps({"label": label, "confidence": round(confidence, 6)}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="saris",
        description="Student annual review service and success predictor",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--port", type=int)
    serve.add_argument("--host")
    serve.add_argument("--store", help="path of the store file")
    serve.add_argument("--seed-dir", dest="seed_dir",
                       help="directory of per-table CSV fixtures")
    serve.add_argument("--accounts", help="CSV of login principals")
    serve.add_argument("--ui-dir", dest="ui_dir",
                       help="serve a built browser client from this directory")
    serve.add_argument("--config", help="JSON config file")
    serve.set_defaults(func=_cmd_serve)

    export = sub.add_parser("export", help="derive and write the dataset CSV")
    export.add_argument("--store")
    export.add_argument("--out", help="output file (stdout when omitted)")
    export.add_argument("--config")
    export.set_defaults(func=_cmd_export)

    train = sub.add_parser("train", help="fit a decision tree from a dataset CSV")
    train.add_argument("--data", required=True)
    train.add_argument("--no-prune", action="store_true")
    train.add_argument("--min-leaf", dest="min_leaf", type=int)
    train.add_argument("--confidence", type=float)
    train.add_argument("--out", help="model file (stdout when omitted)")
    train.add_argument("--config")
    train.set_defaults(func=_cmd_train)

    predict = sub.add_parser("predict", help="classify one feature vector")
    predict.add_argument("--model", required=True)
    predict.add_argument("--features", required=True,
                         help="comma-separated counts, e.g. 2,0,0")
    predict.add_argument("--config")
    predict.set_defaults(func=_cmd_predict)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return 1 if error.code not in (0, None) else 0
    try:
        return args.func(args)
    except SarisError as error:
        print(f"error: {error}", file=sys.stderr)
        return 1
    except (FileNotFoundError, ValueError) as error:
        print(f"error: {error}", file=sys.stderr)
        return 1
    except Exception as error:  # noqa: BLE001 - the CLI boundary reports and exits
        print(f"internal error: {error}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())
