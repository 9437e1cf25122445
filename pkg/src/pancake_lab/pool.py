import os


def in_lambda() -> bool:
    return os.environ.get('AWS_LAMBDA_FUNCTION_NAME') is not None


def get_pool_class():
    """Process pool locally; Lambda has no /dev/shm, so a thread pool there."""
    if not in_lambda():
        from multiprocessing import Pool
        return Pool
    else:
        from lambda_thread_pool import LambdaThreadPool
        return LambdaThreadPool


def get_thread_pool_class():
    if not in_lambda():
        from multiprocessing.pool import ThreadPool
        return ThreadPool
    else:
        from lambda_thread_pool import LambdaThreadPool
        return LambdaThreadPool


def map_ordered(func, work_items, concurrency):
    """Apply func to every argument tuple; results come back in submission order."""
    work_items = list(work_items)
    if concurrency is None or concurrency <= 1 or len(work_items) <= 1:
        return [func(*args) for args in work_items]

    pool = get_pool_class()(concurrency)

    results = []

    for args in work_items:
        result = pool.apply_async(func, args)
        results.append(result)

    pool.close()
    pool.join()

    return [result.get() for result in results]
