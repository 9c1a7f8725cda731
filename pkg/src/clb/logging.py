import logging
import os

PLAIN_FORMAT = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"


def _flag(name: str, default: str = "true") -> bool:
    return os.getenv(name, default).lower() == "true"


def _file_handler() -> logging.Handler:
    path = os.getenv("CLB_LOG_FILE", "").strip() or "./data/clb.log"
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    handler = logging.FileHandler(path, encoding="utf-8")
    handler.setFormatter(logging.Formatter(PLAIN_FORMAT))
    return handler


def _rich_handler() -> logging.Handler | None:
    try:
        from rich.console import Console
        from rich.logging import RichHandler
    except Exception:
        return None
    handler = RichHandler(console=Console(stderr=True), rich_tracebacks=True, show_time=True, show_level=True, show_path=False)
    handler.setFormatter(logging.Formatter("%(name)s | %(message)s", datefmt="%H:%M:%S"))
    return handler


def setup_logging(level: str | None = None) -> None:
    name = (level or os.getenv("CLB_LOG_LEVEL", "INFO")).upper()
    lvl = getattr(logging, name, logging.INFO)

    # 长时间的穷举/验证跑批时，把日志写文件，控制台只留汇总表
    if not _flag("CLB_CONSOLE_LOGS"):
        handler = _file_handler()
    elif _flag("CLB_RICH_LOGS") and (rich := _rich_handler()) is not None:
        handler = rich
    else:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(PLAIN_FORMAT))

    logging.basicConfig(level=lvl, handlers=[handler], force=True)
