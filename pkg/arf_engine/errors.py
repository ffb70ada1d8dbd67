"""
异常体系
每个异常带一个机器可读的 code 和 CLI 退出码
"""


class ArfEngineError(Exception):
    """所有 arf-engine 异常的基类"""

    code = "error"
    exit_code = 2

    def __init__(self, message: str = ""):
        super().__init__(message)
        self.message = message

    def one_line(self) -> str:
        """CLI 在 stderr 上打印的那一行"""
        text = " ".join(self.message.split())
        return f"error {self.code}: {text}" if text else f"error {self.code}"


# ========== 输入 / 配置 (退出码 1) ==========

class FormatError(ArfEngineError, ValueError):
    """文件或内联参数无法解析"""

    code = "parse-error"
    exit_code = 1


class ConfigError(ArfEngineError):
    """环境变量配置非法"""

    code = "config-error"
    exit_code = 1


# ========== 前置条件 (退出码 2) ==========

class PreconditionError(ArfEngineError):
    """操作的前置条件不满足"""

    code = "precondition"


class DimensionMismatchError(PreconditionError, ValueError):
    code = "dimension-mismatch"


class DegenerateFormError(PreconditionError):
    code = "degenerate-form"


class NotOrthogonalError(PreconditionError):
    code = "not-orthogonal"


class MembershipError(PreconditionError):
    """h 不在正交映射类群里, Q(i, i∘h) 无定义"""

    code = "not-regularly-homotopic"


class NoPathError(PreconditionError):
    code = "no-path"


class ResourceGuardError(ArfEngineError):
    """枚举 / 计数超出资源上限"""

    code = "resource-guard"


class VerificationError(ArfEngineError):
    code = "verify-mismatch"
