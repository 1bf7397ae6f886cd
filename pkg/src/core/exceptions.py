"""
툴킷 공통 예외

각 모듈은 이 클래스를 상속한 자체 예외를 모듈 안에 선언한다.
"""


class SketchToolkitError(Exception):
    """툴킷 예외의 기반 클래스"""
    pass
